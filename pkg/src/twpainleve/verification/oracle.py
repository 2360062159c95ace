"""Independent beta = 2 oracle: F_2(t) = det(I - K_Airy) on [t, inf).

Ai is evaluated from its Maclaurin series in extended precision near the
origin and from the large-|x| asymptotic expansions (optimally truncated)
beyond.  The determinant is a Nystrom discretization with Gauss-Legendre nodes
pushed to [t, inf) by s = t + 10 (1 + x)/(1 - x).
"""

from __future__ import annotations

import math
import warnings
from functools import lru_cache

import mpmath as mp
import numpy as np

X_MIN, X_MAX = -15.0, 15.0
# Maclaurin series on [ASYM_NEG, ASYM_POS], asymptotics outside
ASYM_POS = 6.0
ASYM_NEG = -8.0
_DPS = 40
MAP_SCALE = 10.0


def _maclaurin(x):
    with mp.workdps(_DPS):
        x = mp.mpf(x)
        c1 = mp.mpf(3) ** (-mp.mpf(2) / 3) / mp.gamma(mp.mpf(2) / 3)
        c2 = mp.mpf(3) ** (-mp.mpf(1) / 3) / mp.gamma(mp.mpf(1) / 3)
        x3 = x**3
        f = fp = mp.mpf(0)
        g = gp = mp.mpf(0)
        tf, tg = mp.mpf(1), x  # terms of f and g
        k = 0
        while True:
            f += tf
            g += tg
            # derivatives term by term: d/dx x^{3k} and x^{3k+1}
            if k > 0:
                fp += tf * 3 * k / x if x != 0 else 0
            gp += tg * (3 * k + 1) / x if x != 0 else (1 if k == 0 else 0)
            tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
            tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            if abs(tf) + abs(tg) < mp.mpf(10) ** (-_DPS + 5) * (1 + abs(f) + abs(g)) and k > 3:
                break
        return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


def _u_coeffs(n):
    u = [mp.mpf(1)]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [mp.mpf(1)] + [-(6 * k + 1) * u[k] / (6 * k - 1) for k in range(1, n)]
    return u, v


def _asymptotic(x):
    with mp.workdps(30):
        x = mp.mpf(x)
        y = abs(x)
        z = mp.mpf(2) / 3 * y**1.5
        u, v = _u_coeffs(60)
        # stop at the smallest term
        def series(c, sign_alt, start=0, step=1):
            s, prev = mp.mpf(0), mp.inf
            k = start
            j = 0
            while k < len(c):
                term = c[k] / z**k * (sign_alt ** j)
                if abs(term) > prev:
                    break
                s += term
                prev = abs(term)
                k += step
                j += 1
            return s
        if x > 0:
            pre = mp.exp(-z) / (2 * mp.sqrt(mp.pi))
            ai = pre * y ** (-0.25) * series(u, -1)
            aip = -pre * y**0.25 * series(v, -1)
        else:
            th = z - mp.pi / 4
            pe, po = series(u, -1, 0, 2), series(u, -1, 1, 2)
            qe, qo = series(v, -1, 0, 2), series(v, -1, 1, 2)
            ai = y ** (-0.25) / mp.sqrt(mp.pi) * (mp.cos(th) * pe + mp.sin(th) * po)
            aip = y**0.25 / mp.sqrt(mp.pi) * (mp.sin(th) * qe - mp.cos(th) * qo)
        return float(ai), float(aip)


@lru_cache(maxsize=65536)
def airy_pair(x):
    """(Ai(x), Ai'(x)) for x in [-15, 15]."""
    x = float(x)
    if not X_MIN <= x <= X_MAX:
        raise ValueError(f"airy_ai domain is [{X_MIN}, {X_MAX}], got {x}")
    if ASYM_NEG <= x <= ASYM_POS:
        return _maclaurin(x)
    return _asymptotic(x)


def airy_ai(x):
    return airy_pair(x)[0]


def overlap_check(n=41):
    """Max |Maclaurin - asymptotic| on [6, 8] and [-10, -8] for Ai and Ai'."""
    worst = 0.0
    for x in np.concatenate([np.linspace(ASYM_POS, ASYM_POS + 2, n),
                             np.linspace(ASYM_NEG - 2, ASYM_NEG, n)]):
        a, b = _maclaurin(x), _asymptotic(x)
        worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
    return worst


def _kernel(s):
    A = np.zeros(len(s))
    Ap = np.zeros(len(s))
    for i, si in enumerate(s):
        if si <= X_MAX:  # beyond, Ai is below 1e-17
            A[i], Ap[i] = airy_pair(float(si))
    S1, S2 = np.meshgrid(s, s, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        K = (np.outer(A, Ap) - np.outer(Ap, A)) / (S1 - S2)
    np.fill_diagonal(K, Ap**2 - s * A**2)
    return K


def fredholm_logdet(t, m=60):
    """log det(I - K_Airy) on [t, inf) with m Gauss-Legendre nodes."""
    if not -10.0 <= t <= 6.0:
        raise ValueError("t must lie in [-10, 6]")
    if not 30 <= m <= 120:
        raise ValueError("m must lie in [30, 120]")
    x, w = np.polynomial.legendre.leggauss(m)
    s = t + MAP_SCALE * (1 + x) / (1 - x)
    ws = w * 2 * MAP_SCALE / (1 - x) ** 2
    r = np.sqrt(ws)
    A = np.eye(m) - r[:, None] * _kernel(s) * r[None, :]
    sign, logdet = np.linalg.slogdet(A)
    if sign <= 0:
        raise ArithmeticError(f"non-positive Fredholm determinant at t={t}")
    return logdet


def fredholm_tw2(t, m=60):
    """F_2(t); if the determinant underflows the log-determinant is returned."""
    ld = fredholm_logdet(t, m)
    val = math.exp(ld)
    if val == 0.0:
        warnings.warn(f"F_2 underflows at t={t}; returning log-determinant", RuntimeWarning)
        return ld
    return val
