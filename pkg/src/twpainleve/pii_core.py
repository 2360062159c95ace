"""Hastings-McLeod solution of Painleve II, q'' = 2 q^3 + t q.

The global solution is computed by multiple shooting with Taylor-series
propagation between equally spaced nodes.  Dirichlet data come from the two
tail expansions.  The Taylor polynomials built during the final Newton pass are
kept as the dense representation, so q, q' and q'' are available anywhere in
the domain to the accuracy of the series (no secondary interpolation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import airy

from . import tail_series as ts

DEFAULT_TOL = 1e-11
DEFAULT_T_MIN = -12.0
DEFAULT_T_MAX = 8.0
SEED_ORDER = 8

# Taylor order and node spacing; 0.25 * (1 / radius) ** 30 is far below 1e-16
# on the whole real line for this solution.
TAYLOR_ORDER = 30
NODE_STEP = 0.25


class SolverError(RuntimeError):
    """Boundary-value iteration failed; carries the last residual."""

    def __init__(self, msg, residual=float("nan")):
        super().__init__(f"{msg} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class PIIPoint:
    t: float
    q: float
    qp: float
    g: float
    gp: float
    u: float

    @classmethod
    def from_q(cls, t, q, qp):
        g = q * q
        return cls(t=t, q=q, qp=qp, g=g, gp=2.0 * q * qp, u=qp * qp - t * g - g * g)


def seed_plus(t, N=SEED_ORDER):
    """Truncated right-tail series of q and its t-derivative (first N terms)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if t < 4:
        raise ValueError(f"seed_plus needs t >= 4, got {t}")
    C = ts.plus_amplitudes(N)
    s = sd = 0.0
    for n, c in enumerate(C):
        a = float(c) * ts.C0 * t ** (-1.5 * n)
        s += a
        sd += -1.5 * n * a / t
    pref = math.exp(-2.0 * t**1.5 / 3.0) * t**-0.25
    return pref * s, pref * (sd - s * (math.sqrt(t) + 0.25 / t))


def seed_minus(t, N=SEED_ORDER):
    """Truncated left-tail series q = sum C_n x^{1/2-3n}, x = -t/2, and q'."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if t > -4:
        raise ValueError(f"seed_minus needs t <= -4, got {t}")
    x = -0.5 * t
    s = ds = 0.0
    for n, c in enumerate(ts.minus_amplitudes(N)):
        e = 0.5 - 3 * n
        s += float(c) * x**e
        ds += float(c) * e * x ** (e - 1)
    return s, -0.5 * ds


def _taylor(t0, q0, p0, K, lin=False):
    """Taylor coefficients of q about t0; with lin=True also the two
    variational solutions (columns for dq0 and dp0)."""
    a = np.zeros(K + 1)
    a[0], a[1] = q0, p0
    sq = np.zeros(K + 1)  # coefficients of a^2
    cu = np.zeros(K + 1)  # coefficients of a^3
    if lin:
        d = np.zeros((K + 1, 2))
        d[0, 0] = 1.0
        d[1, 1] = 1.0
    for k in range(K - 1):
        sq[k] = a[: k + 1] @ a[k::-1]
        cu[k] = sq[: k + 1] @ a[k::-1]
        lower = a[k - 1] if k >= 1 else 0.0
        a[k + 2] = (2.0 * cu[k] + t0 * a[k] + lower) / ((k + 2) * (k + 1))
        if lin:
            # delta'' = (6 q^2 + t) delta
            six = 6.0 * (sq[: k + 1] @ d[k::-1])
            low = d[k - 1] if k >= 1 else 0.0
            d[k + 2] = (six + t0 * d[k] + low) / ((k + 2) * (k + 1))
    if lin:
        return a, d
    return a


def _horner(c, h):
    """Value, first and second derivative of sum c_k h^k."""
    K = len(c) - 1
    k = np.arange(K + 1)
    hp = h ** k
    v = c @ hp
    d1 = (k[1:] * c[1:]) @ hp[:-1]
    d2 = (k[2:] * (k[2:] - 1) * c[2:]) @ hp[:-2]
    return v, d1, d2


def _initial_guess(t):
    # rough homotopy between the two tails; only seeds Newton
    ai = airy(np.minimum(t, 20.0))[0]
    return np.sqrt(np.maximum(-0.5 * t, 0.0) + ai * ai)


@dataclass(frozen=True)
class PIISolution:
    t_min: float
    t_max: float
    nodes: np.ndarray  # shape (n, 3): t, q, qp
    interp_order: int
    handoff_plus: float
    handoff_minus: float
    tol: float
    coef: np.ndarray = field(repr=False)  # Taylor coefficients per interval
    seed_order: int = SEED_ORDER

    def _local(self, t):
        i = int(np.searchsorted(self.nodes[:, 0], t, side="right")) - 1
        i = min(max(i, 0), len(self.coef) - 1)
        return _horner(self.coef[i], t - self.nodes[i, 0])

    def q_qp(self, t):
        if t > self.handoff_plus:
            return seed_plus(t, self.seed_order)
        if t < self.handoff_minus:
            return seed_minus(t, self.seed_order)
        v, d1, _ = self._local(t)
        return v, d1

    def qpp(self, t):
        """q'' from the dense representation (inside the grid) or from PII."""
        if self.handoff_minus <= t <= self.handoff_plus:
            return self._local(t)[2]
        q, _ = self.q_qp(t)
        return 2.0 * q**3 + t * q

    def residual(self, t):
        q, _ = self.q_qp(t)
        return self.qpp(t) - 2.0 * q**3 - t * q


def solve_hm(t_min=DEFAULT_T_MIN, t_max=DEFAULT_T_MAX, tol=DEFAULT_TOL,
             seed_order=SEED_ORDER, max_iter=40):
    """Hastings-McLeod q on [t_min, t_max] by Newton multiple shooting."""
    if t_min > -8 or t_max < 8:
        raise ValueError("domain must contain [-8, 8]")
    if not (1e-13 <= tol <= 1e-6):
        raise ValueError("tol must lie in [1e-13, 1e-6]")

    n_int = int(math.ceil((t_max - t_min) / NODE_STEP))
    tn = np.linspace(t_min, t_max, n_int + 1)
    h = np.diff(tn)
    K = TAYLOR_ORDER
    qa, _ = seed_minus(t_min, seed_order)
    qb, _ = seed_plus(t_max, seed_order)

    y = np.empty((n_int + 1, 2))
    y[:, 0] = _initial_guess(tn)
    y[:, 1] = np.gradient(y[:, 0], tn)
    y[0, 0], y[-1, 0] = qa, qb

    m = 2 * (n_int + 1)
    res_norm = float("inf")
    for it in range(max_iter):
        F = np.zeros(m)
        J = np.zeros((m, m))
        F[0] = y[0, 0] - qa
        J[0, 0] = 1.0
        for i in range(n_int):
            a, d = _taylor(tn[i], y[i, 0], y[i, 1], K, lin=True)
            v, d1, _ = _horner(a, h[i])
            kk = np.arange(K + 1)
            hp = h[i] ** kk
            dv = hp @ d
            dd1 = (kk[1:] * hp[:-1]) @ d[1:]
            r = 2 * i + 1
            F[r:r + 2] = [v - y[i + 1, 0], d1 - y[i + 1, 1]]
            J[r:r + 2, 2 * i:2 * i + 2] = [dv, dd1]
            J[r, 2 * i + 2] = -1.0
            J[r + 1, 2 * i + 3] = -1.0
        F[-1] = y[-1, 0] - qb
        J[-1, -2] = 1.0
        res_norm = float(np.max(np.abs(F)))
        step = np.linalg.solve(J, -F)
        y += step.reshape(-1, 2)
        if res_norm < 1e-15 and np.max(np.abs(step)) < 1e-15 * (1 + np.max(np.abs(y))):
            break
        if not np.all(np.isfinite(y)):
            raise SolverError("Newton iterates diverged", res_norm)
    else:
        if res_norm > tol:
            raise SolverError("boundary-value Newton did not converge", res_norm)

    coef = np.array([_taylor(tn[i], y[i, 0], y[i, 1], K) for i in range(n_int)])
    nodes = np.column_stack([tn, y])
    sol = PIISolution(
        t_min=float(t_min), t_max=float(t_max), nodes=nodes, interp_order=K,
        handoff_plus=float(t_max), handoff_minus=float(t_min), tol=tol,
        coef=coef, seed_order=seed_order,
    )
    worst = max(abs(sol.residual(t)) / (1 + abs(sol.q_qp(t)[0]) ** 3)
                for t in np.linspace(t_min, t_max, 4 * n_int + 1))
    if worst > tol:
        raise SolverError("PII residual above tolerance", worst)
    return sol


def eval(sol: PIISolution, t) -> PIIPoint:  # noqa: A001 - public name
    q, qp = sol.q_qp(float(t))
    return PIIPoint.from_q(float(t), q, qp)


def integral_q2(sol: PIISolution, t):
    """int_t^inf q^2 ds by Gauss-Legendre panels plus the series tail."""
    from scipy.integrate import quad

    f = lambda s: sol.q_qp(s)[0] ** 2
    total = 0.0
    a = float(t)
    edges = [a] + [e for e in np.arange(math.floor(a) + 1, sol.t_max + 1e-12) if e > a]
    if edges[-1] < sol.t_max:
        edges.append(sol.t_max)
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    b = max(a, sol.t_max)
    total += quad(f, b, b + 12.0, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    return total
