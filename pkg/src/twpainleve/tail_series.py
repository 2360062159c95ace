"""Asymptotic tail expansions of the Hastings-McLeod functions and of Phi.

Right tail (t -> +inf), with E = exp(-4 t^{3/2} / 3)::

    q   = E^{1/2} t^{-1/4} sum C_n t^{-3n/2}
    g   = E t^{-1/2}       sum g_n t^{-3n/2}
    u   = E t^{-1}         sum u_n t^{-3n/2}
    g'  = E                sum gp_n t^{-3n/2}
    Phi = E t^{-4}         sum phi_n t^{-3n/2}

Left tail (t -> -inf), with x = -t/2::

    q   = sum C_n x^{1/2 - 3n}
    g   = sum g_n x^{1 - 3n}
    u   = sum u_n x^{2 - 3n}
    h_- = -2 x^{1/2} sum h_n x^{-3n/2},     Phi = u + h_-

All coefficient recursions run in exact rational arithmetic.  The right-tail
coefficients carry powers of C_0 = 1/(2 sqrt(pi)); they are stored as rationals
in units of C_0 (for C_n), C_0^2 (g, u, g', phi) and C_0^4 (quadratic forms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

C0 = 0.5 / math.sqrt(math.pi)
C0_SQ = 0.25 / math.pi

DEFAULT_ORDER = 16


def _conv(a, b, n):
    return sum((a[k] * b[n - k] for k in range(n + 1)), Fraction(0))


def _as_float(seq, unit=1.0):
    return np.array([float(x) * unit for x in seq])


def plus_amplitudes(N):
    """Return C_n / C_0 for n < N (Airy-type recursion)."""
    c = [Fraction(1)]
    for n in range(N - 1):
        c.append(-Fraction((1 + 6 * n) * (5 + 6 * n), 48 * (n + 1)) * c[n])
    return c


def minus_amplitudes(N):
    """Return C_n for n < N from the cubic recursion with C_0 = 1."""
    C = [Fraction(1)]
    for n in range(1, N):
        cubic = Fraction(0)
        for k in range(n):
            for l in range(n - k + 1):
                m = n - k - l
                if l <= n - 1 and m <= n - 1:
                    cubic += C[k] * C[l] * C[m]
        C.append((Fraction(36 * (n - 1) ** 2 - 1, 16) * C[n - 1] - 2 * cubic) / 4)
    return C


@dataclass(frozen=True)
class PlusTail:
    N: int
    C: np.ndarray
    g: np.ndarray
    u: np.ndarray
    gp: np.ndarray
    g2: np.ndarray
    phi: np.ndarray
    exact: dict

    def identity(self, n):
        """Exact value of 4(ug')_n + 3(g^2)_n + 4(u^2)_n, in units of C_0^4."""
        return _plus_source(self.exact, n)


@dataclass(frozen=True)
class MinusTail:
    N: int
    C: np.ndarray
    g: np.ndarray
    u: np.ndarray
    gp: np.ndarray
    g2: np.ndarray
    ugp: np.ndarray
    h: np.ndarray
    hp: np.ndarray
    hpp: np.ndarray
    exact: dict


def _plus_source(ex, n):
    u, gp, g = ex["u"], ex["gp"], ex["g"]
    return 4 * _conv(u, gp, n) + 3 * _conv(g, g, n) + 4 * _conv(u, u, n)


def _plus_exact(N):
    # quadratic sources are needed two orders beyond the last phi
    M = N + 2
    c = plus_amplitudes(M + 1)
    g = [_conv(c, c, n) for n in range(M + 1)]
    u = [g[0] / 2]
    for n in range(1, M + 1):
        u.append((g[n] - Fraction(3 * n - 1, 2) * u[n - 1]) / 2)
    gp = [-2 * g[0]]
    for n in range(1, M + 1):
        gp.append(-(2 * g[n] + (Fraction(3 * n, 2) - 1) * g[n - 1]))
    ex = {"C": c, "g": g, "u": u, "gp": gp}

    phi = []
    for n in range(N + 1):
        rhs = -_plus_source(ex, n + 2)
        for l in range(n):
            a = 4 + Fraction(3 * l, 2)  # Phi term l ~ t^{-a}
            rhs -= (32 * u[n - l] - 3 * gp[n - l] - 18 * g[n - l]) * phi[l]
            rhs -= (9 * (4 * a - 1) * u[n - 1 - l] - 9 * a * g[n - 1 - l]) * phi[l]
            if l <= n - 2:
                rhs -= 9 * a * (a + 1) * u[n - 2 - l] * phi[l]
        phi.append(rhs / (4 * g[0]))
    ex["phi"] = phi
    ex["g2"] = [_conv(g, g, n) for n in range(M + 1)]
    return ex


def phi_plus_printed(N):
    """phi_0..phi_N (units of C_0^2) from the recursion as it is printed.

    The bracket weights there correspond to Phi terms ~ t^{-(1 + 3l/2)}, not
    t^{-(4 + 3l/2)}; the two readings agree at n = 0 only.  Kept for
    comparison with ``build_plus``.
    """
    ex = _plus_exact(N)
    u, g, gp = ex["u"], ex["g"], ex["gp"]
    phi = []
    for n in range(N + 1):
        rhs = -_plus_source(ex, n + 2)
        for l in range(n):
            rhs -= (32 * u[n - l] - 3 * gp[n - l] - 18 * g[n - l]
                    + 27 * (3 + 2 * l) * u[n - 1 - l]
                    - Fraction(9 * (5 + 3 * l), 2) * g[n - 1 - l]) * phi[l]
            if l <= n - 2:
                rhs += 9 * (1 + Fraction(3 * l, 2)) * (2 + Fraction(3 * l, 2)) * u[n - 2 - l] * phi[l]
        phi.append(rhs / (4 * g[0]))
    return phi


def build_plus(N=DEFAULT_ORDER):
    """Coefficient tables of the t -> +inf expansions through index N."""
    if N < 1:
        raise ValueError("order must be >= 1")
    ex = _plus_exact(N)
    sl = slice(0, N + 1)
    return PlusTail(
        N=N,
        C=_as_float(ex["C"][sl], C0),
        g=_as_float(ex["g"][sl], C0_SQ),
        u=_as_float(ex["u"][sl], C0_SQ),
        gp=_as_float(ex["gp"][sl], C0_SQ),
        g2=_as_float(ex["g2"][sl], C0_SQ**2),
        phi=_as_float(ex["phi"], C0_SQ),
        exact=ex,
    )


def _half(seq, m2):
    """seq evaluated at the index m2 / 2; zero unless m2 is even and in range."""
    if m2 < 0 or m2 % 2:
        return Fraction(0)
    m = m2 // 2
    return seq[m] if m < len(seq) else Fraction(0)


def _fh(f, hk, n):
    # (f h^k)_n = sum_j f_{(n-j)/2} (h^k)_j
    return sum((_half(f, n - j) * hk[j] for j in range(n + 1)), Fraction(0))


def _minus_exact(N):
    M = N // 2 + 2
    C = minus_amplitudes(M + 1)
    g = [_conv(C, C, n) for n in range(M + 1)]
    u = [g[n] / (1 - Fraction(3 * n, 2)) for n in range(M + 1)]
    gp = [Fraction((3 * n - 1) * (3 * n - 2), 2) * u[n] for n in range(M + 1)]
    g2 = [_conv(g, g, n) for n in range(M + 1)]
    ugp = [_conv(u, gp, n) for n in range(M + 1)]
    ug = [_conv(u, g, n) for n in range(M + 1)]

    h = [Fraction(1)]

    def residual(h):
        n = len(h) - 1
        hp = [(1 - 3 * k) * h[k] for k in range(n + 1)]
        hpp = [(1 - 9 * k * k) * h[k] for k in range(n + 1)]
        h2 = [_conv(h, h, k) for k in range(n + 1)]
        h3 = [_conv(h2, h, k) for k in range(n + 1)]
        hhp = [_conv(h, hp, k) for k in range(n + 1)]
        r = 8 * (-_fh(u, h3, n) + 3 * _fh(ug, h, n) - 2 * _fh(u, h, n))
        if n >= 1:
            r += 4 * (
                -Fraction(9, 4) * _fh(u, hhp, n - 1)
                + 3 * _fh(g, h2, n - 1)
                + _half(ugp, n - 1)
                - Fraction(3, 2) * _half(g2, n - 1)
            )
        if n >= 2:
            r += (
                Fraction(9, 8) * _fh(u, hpp, n - 2)
                + Fraction(9, 2) * _fh(g, hp, n - 2)
                - 3 * _fh(gp, h, n - 2)
            )
        return r

    for n in range(1, N + 1):
        r0 = residual(h + [Fraction(0)])
        slope = residual(h + [Fraction(1)]) - r0
        h.append(-r0 / slope)

    return {
        "C": C, "g": g, "u": u, "gp": gp, "g2": g2, "ugp": ugp, "h": h,
        "residual": residual,
    }


def build_minus(N=DEFAULT_ORDER):
    """Coefficient tables of the t -> -inf expansions (h_n through index N)."""
    if N < 1:
        raise ValueError("order must be >= 1")
    ex = _minus_exact(N)
    h = ex["h"]
    return MinusTail(
        N=N,
        C=_as_float(ex["C"]),
        g=_as_float(ex["g"]),
        u=_as_float(ex["u"]),
        gp=_as_float(ex["gp"]),
        g2=_as_float(ex["g2"]),
        ugp=_as_float(ex["ugp"]),
        h=_as_float(h),
        hp=_as_float([(1 - 3 * n) * h[n] for n in range(len(h))]),
        hpp=_as_float([(1 - 9 * n * n) * h[n] for n in range(len(h))]),
        exact=ex,
    )


def optimal_cut(terms):
    """Number of leading terms to keep: stop before magnitudes start to grow."""
    mags = np.abs(np.asarray(terms, dtype=float))
    last = mags[0]
    for n in range(1, len(mags)):
        if mags[n] == 0.0:
            continue
        if mags[n] > last:
            return n
        last = mags[n]
    return len(mags)


def _power_sum(coef, x, step, k=None):
    """sum_n coef_n x^{-step n}, optimally truncated unless k terms are
    requested; also the derivative in x."""
    n = np.arange(len(coef))
    terms = coef * x ** (-step * n)
    if k is None:
        k = optimal_cut(terms)
    s = terms[:k].sum()
    ds = (-(step * n[:k]) * terms[:k]).sum() / x
    return s, ds


def plus_functions(tail: PlusTail, t):
    """Series values of q, q', g, g', u for t -> +inf."""
    if t < 4:
        raise ValueError(f"right-tail series used at t={t} < 4")
    s32 = t**1.5
    E = math.exp(-4.0 * s32 / 3.0)
    sq, dsq = _power_sum(tail.C, t, 1.5)
    pref = math.exp(-2.0 * s32 / 3.0) * t**-0.25
    q = pref * sq
    qp = pref * (dsq + sq * (-math.sqrt(t) - 0.25 / t))
    sg, _ = _power_sum(tail.g, t, 1.5)
    su, _ = _power_sum(tail.u, t, 1.5)
    sgp, _ = _power_sum(tail.gp, t, 1.5)
    return {"q": q, "qp": qp, "g": E * sg / math.sqrt(t), "u": E * su / t, "gp": E * sgp}


def eval_phi_plus(tail: PlusTail, t, n_terms=None):
    """Phi and Phi' from the right-tail series (optimal truncation by default)."""
    if t < 4:
        raise ValueError(f"right-tail series used at t={t} < 4")
    s, ds = _power_sum(tail.phi, t, 1.5, n_terms)
    pref = math.exp(-4.0 * t**1.5 / 3.0) * t**-4
    dpref = pref * (-2.0 * math.sqrt(t) - 4.0 / t)
    return pref * s, dpref * s + pref * ds


def integrate_phi_plus(tail: PlusTail, t):
    """int_t^inf Phi ds from the series, by adaptive quadrature."""
    from scipy.integrate import quad

    # freeze the truncation chosen at t: terms only shrink further right and a
    # moving cut would make the integrand discontinuous
    k = optimal_cut(tail.phi * t ** (-1.5 * np.arange(len(tail.phi))))
    f = lambda s: eval_phi_plus(tail, s, k)[0]
    # integrand below 1e-18 relative to the start well before s = t + 12
    total, err = 0.0, 0.0
    a = t
    while True:
        b = a + 1.0
        val, e = quad(f, a, b, epsabs=0.0, epsrel=1e-13)
        total += val
        err += e
        if f(b) < 1e-18 * max(f(t), 1e-300) or f(b) == 0.0:
            break
        a = b
    return total


def minus_functions(tail: MinusTail, t):
    """Series values of q, q', g, u, h_- and h_-' for t -> -inf."""
    if t > -4:
        raise ValueError(f"left-tail series used at t={t} > -4")
    x = -t / 2.0
    # q = x^{1/2} sum C_n x^{-3n}
    sq, dsq = _power_sum(tail.C, x, 3.0)
    q = math.sqrt(x) * sq
    dq_dx = 0.5 * sq / math.sqrt(x) + math.sqrt(x) * dsq
    su, dsu = _power_sum(tail.u, x, 3.0)
    u = x * x * su
    sh, dsh = _power_sum(tail.h, x, 1.5)
    h = -2.0 * math.sqrt(x) * sh
    dh_dx = -(sh / math.sqrt(x) + 2.0 * math.sqrt(x) * dsh)
    return {"q": q, "qp": -0.5 * dq_dx, "g": q * q, "u": u, "h": h, "hp": -0.5 * dh_dx}


def eval_phi_minus(tail: MinusTail, t):
    """Phi = u + h_- from the left-tail series."""
    f = minus_functions(tail, t)
    return f["u"] + f["h"]


def eval_phi_minus_deriv(tail: MinusTail, t):
    f = minus_functions(tail, t)
    return f["u"] + f["h"], -f["g"] + f["hp"]
