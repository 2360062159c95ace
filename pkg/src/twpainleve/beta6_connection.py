"""Phi(t) = 3 (ln F_0)'(t) for beta = 6 by two independent routes.

scalar route: the second-order equation for Phi with coefficients built from
    g = q^2, g' and u, seeded from the right-tail series and integrated leftward;
linear route: the 3x3 system for (mu_+, mu_-, nu), Phi = u + nu / mu_-.

Both routes carry an extra component J(t) = int_t^inf Phi ds, seeded by the
series tail integral, so ln F_0 = -J / 3 comes out of the same pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import tail_series as ts
from .pii_core import PIIPoint, PIISolution, eval as pii_eval

# right-tail series is accurate to ~5e-10 relative at t = 16 and the leftward
# flow damps seed errors further (homogeneous modes decay relative to Phi)
DEFAULT_T0 = 16.0
DEFAULT_T_END = -12.0
RENORM = 1e100


class IntegrationError(RuntimeError):
    def __init__(self, msg, t=float("nan")):
        super().__init__(f"{msg} at t={t:.6g}")
        self.t = t


@dataclass(frozen=True)
class AuxState:
    mu_plus: float
    mu_minus: float
    nu: float
    log_scale: float = 0.0

    def as_array(self):
        return np.array([self.mu_plus, self.mu_minus, self.nu])

    @property
    def h_minus(self):
        return self.nu / self.mu_minus

    @property
    def h_plus(self):
        return self.nu / self.mu_plus


@dataclass(frozen=True)
class PhiTable:
    grid: np.ndarray
    phi: np.ndarray
    phip: np.ndarray
    route: str
    tail_integral: np.ndarray  # int_t^inf Phi ds
    t_start: float
    h_minus: np.ndarray | None = None
    h_plus: np.ndarray | None = None
    states: np.ndarray | None = field(default=None, repr=False)
    log_scale: np.ndarray | None = field(default=None, repr=False)

    def interp(self, t):
        """Cubic Hermite interpolation of Phi on the table."""
        from scipy.interpolate import CubicHermiteSpline

        spl = CubicHermiteSpline(self.grid, self.phi, self.phip)
        return spl(t)


def _point(sol, t):
    return pii_eval(sol, t)


def phi_rhs(t, phi, phip, p: PIIPoint):
    """Phi'' from the scalar equation."""
    if p.u <= 0:
        raise ValueError(f"u must be positive, got {p.u} at t={t}")
    gu = p.g / p.u
    G = gu - p.u
    rest = (
        9.0 * (phi + G) * phip
        + phi**3
        + 3.0 * G * phi**2
        + (3.0 * p.u**2 - 3.0 * p.gp / p.u - 9.0 * p.g - 4.0 * t) * phi
        + 4.0 * p.gp + 3.0 * p.g * gu + 4.0 * t * p.u + 6.0 * p.u * p.g - p.u**3
    )
    return -rest / 9.0


def phi_residual(t, phi, phip, phipp, p: PIIPoint):
    """Left-hand side of the scalar Phi equation (for checks)."""
    return 9.0 * (phipp - phi_rhs(t, phi, phip, p))


def integrate_phi(sol: PIISolution, t_start=DEFAULT_T0, t_end=DEFAULT_T_END,
                  tol=1e-12, grid=None, tail=None):
    """Integrate the scalar equation leftward from a right-tail seed."""
    if t_start < 6:
        raise ValueError("t_start must be >= 6")
    tail = tail or ts.build_plus(ts.DEFAULT_ORDER)
    f0, fp0 = ts.eval_phi_plus(tail, t_start)
    J0 = ts.integrate_phi_plus(tail, t_start)

    def rhs(t, y):
        p = _point(sol, t)
        return [y[1], phi_rhs(t, y[0], y[1], p), -y[0]]

    if grid is None:
        grid = np.linspace(t_end, t_start, int(round((t_start - t_end) / 0.05)) + 1)
    grid = np.asarray(grid, dtype=float)
    t_eval = np.sort(grid)[::-1]
    r = solve_ivp(rhs, (t_start, t_end), [f0, fp0, J0], method="DOP853",
                  rtol=tol, atol=1e-300, t_eval=t_eval, dense_output=False)
    if r.status != 0:
        raise IntegrationError(f"scalar route failed: {r.message}", float(r.t[-1]))
    o = np.argsort(r.t)
    return PhiTable(grid=r.t[o], phi=r.y[0][o], phip=r.y[1][o], route="scalar",
                    tail_integral=r.y[2][o], t_start=float(t_start))


def linear_rhs(t, s, p: PIIPoint):
    """d/dt of (mu_+, mu_-, nu)."""
    if p.g <= 0:
        raise ValueError(f"g must be positive, got {p.g} at t={t}")
    mp, mm, nu = s
    d = 3.0 * p.g
    return np.array([
        (p.gp * mp - p.g * nu) / d,
        (-p.gp * mm + p.g * nu) / d,
        (2.0 * p.g * p.g * mm - 2.0 * p.u * mp) / d,
    ])


def seed_linear(t0, tails: ts.PlusTail, p: PIIPoint | None = None):
    """Initial state on the Tracy-Widom trajectory at t0 (right tail)."""
    if t0 < 6:
        raise ValueError("t0 must be >= 6")
    f = ts.plus_functions(tails, t0)
    phi, phip = ts.eval_phi_plus(tails, t0)
    g, gp, u = f["g"], f["gp"], f["u"]
    hm = phi - u
    hmp = phip + g  # u' = -g
    den = 3.0 * g * hmp - gp * hm + g * hm * hm - 2.0 * g * g
    if den == 0.0 or not np.isfinite(den):
        raise IntegrationError("vanishing denominator in h_+ seed", t0)
    hp = -2.0 * u * hm / den
    return AuxState(mu_plus=hm / hp, mu_minus=1.0, nu=hm, log_scale=0.0)


def integrate_linear(sol: PIISolution, seed: AuxState, t0=DEFAULT_T0,
                     t_end=DEFAULT_T_END, tol=1e-12, grid=None, chunk=0.5,
                     tail=None):
    """Integrate the linear system leftward, renormalizing large states."""
    tail = tail or ts.build_plus(ts.DEFAULT_ORDER)

    def rhs(t, y):
        p = _point(sol, t)
        dy = linear_rhs(t, y[:3], p)
        return [dy[0], dy[1], dy[2], -(p.u + y[2] / y[1])]

    if grid is None:
        grid = np.linspace(t_end, t0, int(round((t0 - t_end) / 0.05)) + 1)
    grid = np.sort(np.asarray(grid, dtype=float))[::-1]

    y = np.append(seed.as_array(), ts.integrate_phi_plus(tail, t0))
    log_scale = seed.log_scale
    out_t, out_y, out_ls = [], [], []
    edges = np.arange(t0, t_end, -chunk)
    edges = np.append(edges, t_end)
    if edges[0] != t0:
        edges = np.insert(edges, 0, t0)
    for a, b in zip(edges[:-1], edges[1:]):
        sel = grid[(grid <= a) & (grid >= b)]
        # J' = -(u + h_-) is a cancelling difference at large t; leave it out
        # of the error norm so it rides on the steps chosen for the state
        r = solve_ivp(rhs, (a, b), y, method="DOP853", rtol=tol,
                      atol=[1e-300, 1e-300, 1e-300, 1e300], dense_output=True)
        if r.status != 0:
            raise IntegrationError(f"linear route failed: {r.message}", float(r.t[-1]))
        if len(sel):
            out_t.append(sel)
            out_y.append(r.sol(sel))
            out_ls.append(np.full(len(sel), log_scale))
        yb = r.y[:, -1]
        if yb[1] == 0.0 or np.sign(yb[1]) != np.sign(y[1]):
            raise IntegrationError("mu_- crossed zero (pole of h_-)", b)
        y = yb.copy()
        m = np.max(np.abs(y[:3]))
        if m > RENORM:
            y[:3] /= m
            log_scale += math.log(m)

    T = np.concatenate(out_t)
    Y = np.concatenate(out_y, axis=1)
    LS = np.concatenate(out_ls)
    T, idx = np.unique(T, return_index=True)
    Y, LS = Y[:, idx], LS[idx]
    pts = [_point(sol, t) for t in T]
    u = np.array([p.u for p in pts])
    g = np.array([p.g for p in pts])
    hm = Y[2] / Y[1]
    hp = Y[2] / Y[0]
    # Phi' = u' + h_-', with h_-' from the mu_-, nu equations
    dY = np.array([linear_rhs(t, Y[:3, k], p) for k, (t, p) in enumerate(zip(T, pts))]).T
    hmp = (dY[2] * Y[1] - Y[2] * dY[1]) / Y[1] ** 2
    return PhiTable(grid=T, phi=u + hm, phip=-g + hmp, route="linear",
                    tail_integral=Y[3], t_start=float(t0), h_minus=hm, h_plus=hp,
                    states=Y[:3], log_scale=LS)


def gamma_funcs(p: PIIPoint):
    """Gamma = g/u - u with Gamma' and Gamma'' from the (g/u) identities."""
    gu = p.g / p.u
    d1 = p.gp / p.u + gu * gu
    d2 = 3.0 * p.g * p.gp / p.u**2 + 2.0 * gu**3 + 6.0 * p.g**2 / p.u + 4.0 * p.t * gu + 2.0
    # u' = -g, u'' = -g'
    return gu - p.u, d1 + p.g, d2 + p.gp


def _fd5(y, x, k):
    """5-point centered first and second derivatives at interior index k."""
    h = x[k + 1] - x[k]
    y2, y1, y0, ym1, ym2 = y[k + 2], y[k + 1], y[k], y[k - 1], y[k - 2]
    d1 = (-y2 + 8 * y1 - 8 * ym1 + ym2) / (12 * h)
    d2 = (-y2 + 16 * y1 - 30 * y0 + 16 * ym1 - ym2) / (12 * h * h)
    return d1, d2


def eta_residual(t, table: PhiTable, sol: PIISolution):
    """Left-hand side of the eta equation at a table node t (FD in eta)."""
    k = int(np.argmin(np.abs(table.grid - t)))
    if k < 2 or k > len(table.grid) - 3:
        raise ValueError("t too close to the table edge for a 5-point stencil")
    pts = [_point(sol, table.grid[j]) for j in range(k - 2, k + 3)]
    G = np.array([gamma_funcs(p)[0] for p in pts])
    eta = table.phi[k - 2:k + 3] + G
    x = table.grid[k - 2:k + 3]
    d1, d2 = _fd5(eta, x, 2)
    p = pts[2]
    _, Gp, Gpp = gamma_funcs(p)
    e = eta[2]
    return 9 * d2 + 9 * e * d1 + e**3 - 4 * (3 * Gp + p.t) * e - 8 * Gpp - 2, e


def hminus_residual(t, table: PhiTable, sol: PIISolution):
    """Left-hand side of the h_- equation at a table node (FD in h_-)."""
    k = int(np.argmin(np.abs(table.grid - t)))
    pts = [_point(sol, table.grid[j]) for j in range(k - 2, k + 3)]
    h = table.phi[k - 2:k + 3] - np.array([p.u for p in pts])
    d1, d2 = _fd5(h, table.grid[k - 2:k + 3], 2)
    p = pts[2]
    gu = p.g / p.u
    hm = h[2]
    return (9 * d2 + 9 * (hm + gu) * d1 + hm**3 + 3 * gu * hm**2
            - (3 * p.gp / p.u + 12 * p.g + 4 * p.t) * hm - 8 * p.gp - 6 * p.g**2 / p.u)


def riccati_residuals(table: PhiTable, sol: PIISolution, k):
    """Residuals of the first-order h_+ and h_- relations at table index k."""
    t = table.grid[k]
    p = _point(sol, t)
    hm, hp = table.h_minus[k], table.h_plus[k]
    dY = linear_rhs(t, table.states[:, k], p)
    mp, mm, nu = table.states[:, k]
    hmp = (dY[2] * mm - nu * dY[1]) / mm**2
    hpp = (dY[2] * mp - nu * dY[0]) / mp**2
    r20 = 3 * p.g * hpp + p.gp * hp - p.g * hp**2 + 2 * p.u - 2 * p.g**2 * hp / hm
    r21 = 3 * p.g * hmp - p.gp * hm + p.g * hm**2 - 2 * p.g**2 + 2 * p.u * hm / hp
    return r20, r21


def _hplus_jet(table: PhiTable, sol: PIISolution, k):
    """h_+, h_+', h_+'' at table index k, derivatives pushed through the
    linear system (exact up to the state's integration error)."""
    t = table.grid[k]
    p = _point(sol, t)
    mp, mm, nu = table.states[:, k]
    mp1, mm1, nu1 = linear_rhs(t, table.states[:, k], p)
    # second derivatives of the state by differentiating the system once more
    gpp = 6 * p.g**2 + 4 * t * p.g + 2 * p.u
    d = 3 * p.g
    mp2 = ((gpp * mp + p.gp * mp1 - p.gp * nu - p.g * nu1) * d
           - (p.gp * mp - p.g * nu) * 3 * p.gp) / d**2
    nu2 = ((4 * p.g * p.gp * mm + 2 * p.g**2 * mm1 + 2 * p.g * mp - 2 * p.u * mp1) * d
           - (2 * p.g**2 * mm - 2 * p.u * mp) * 3 * p.gp) / d**2
    h = nu / mp
    h1 = (nu1 * mp - nu * mp1) / mp**2
    h2 = (nu2 * mp - nu * mp2) / mp**2 - 2 * mp1 * (nu1 * mp - nu * mp1) / mp**3
    return p, h, h1, h2


def hplus_residual(table: PhiTable, sol: PIISolution, k):
    """Left-hand side of the second-order h_+ equation obtained by eliminating
    h_- between the two Riccati relations (t removed with the u identity)."""
    p, h, h1, h2 = _hplus_jet(table, sol, k)
    g, gp, u = p.g, p.gp, p.u
    return (9 * g**2 * h2 - 9 * g**2 * h * h1 + g**2 * h**3
            + (4 * g**3 - 8 * u * g - gp**2) * h - 6 * g**2 - 8 * u * gp)


def hplus_residual_printed(table: PhiTable, sol: PIISolution, k):
    """The h_+ equation in its printed form; does not vanish on the solution."""
    p, h, h1, h2 = _hplus_jet(table, sol, k)
    g, gp, u = p.g, p.gp, p.u
    return (9 * g**2 * h2 - 3 * g**2 * h * h1 - g**2 * h**3 + 2 * g * gp * h**2
            - (gp**2 - 6 * g**3 + 4 * u * g) * h - 6 * g**2 - 8 * u * gp)
