"""Tracy-Widom CDF/PDF tables for beta = 2, 4, 6.

Internal time tau is the variable of F_0; the physical distribution is
F_TW(t) = F_0(kappa^{2/3} t) with kappa = beta / 2.  ln F_0 is fixed by
F_0(+inf) = 1: everything is integrated leftward from a right switch point T+
whose remainder comes from the tail series.

Log-derivative laws used for (ln F_0)':
    beta = 2:  u
    beta = 4:  (u - q) / 2 on a single gauge branch; the distribution is the
               superposition of the q and -q branches (see ``logderiv``)
    beta = 6:  Phi / 3
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, simpson, solve_ivp

from . import beta6_connection as b6
from . import pii_core
from . import tail_series as ts
from .jets import Jet, solve_second_order

BETAS = (2, 4, 6)
T_PLUS = 16.0


def check_beta(beta):
    if beta not in BETAS:
        raise ValueError(f"unsupported beta={beta}; expected one of {BETAS}")
    return beta


def scale_of(beta):
    return (check_beta(beta) / 2.0) ** (2.0 / 3.0)


@dataclass(frozen=True)
class DistTable:
    beta: int
    kappa: float
    scale: float
    grid: np.ndarray  # physical t unless internal is True
    lnF: np.ndarray
    F: np.ndarray
    pdf: np.ndarray
    logderiv: np.ndarray  # d lnF / d(grid variable)
    internal: bool = False
    branch: str = "superposed"

    def to_dict(self):
        return {
            "beta": self.beta,
            "scale": self.scale,
            "grid": self.grid.tolist(),
            "lnF": self.lnF.tolist(),
            "F": self.F.tolist(),
            "pdf": self.pdf.tolist(),
        }


@dataclass(frozen=True)
class FPCoefficients:
    beta: int
    t: float
    n_max: int
    values: np.ndarray  # F_0 ... F_{n_max}
    derivs0: np.ndarray  # F_0, F_0', F_0'', ...
    closed_F3: float  # F_3 from the closed form, for the recursion self-check


def _log_cosh(x):
    x = abs(x)
    if x < 1.0:
        # cosh x - 1 = 2 sinh^2(x/2) keeps tiny arguments free of cancellation
        return math.log1p(2.0 * math.sinh(0.5 * x) ** 2)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def logderiv(beta, t, p: pii_core.PIIPoint, phi=None, iq=None, branch="superposed"):
    """(ln F_0)'(t) at internal time t.

    beta=6 needs ``phi`` (a PhiTable, or a float value of Phi at t).  beta=4
    with the default branch needs ``iq`` = int_t^inf q ds; branch="single"
    returns the single-branch law (u - q) / 2.
    """
    check_beta(beta)
    if beta == 2:
        return p.u
    if beta == 4:
        if branch == "single":
            return 0.5 * (p.u - p.q)
        if iq is None:
            raise ValueError("beta=4 superposed branch needs iq = int_t^inf q")
        return 0.5 * p.u - 0.5 * p.q * math.tanh(0.5 * iq)
    if phi is None:
        raise ValueError("beta=6 needs a Phi table or value")
    val = phi if np.isscalar(phi) else float(phi.interp(t))
    return val / 3.0


def _pii_tail(sol, T):
    """int_T^inf u and int_T^inf q from the right-tail series of q."""
    fu = lambda s: pii_core.eval(sol, s).u
    fq = lambda s: sol.q_qp(s)[0]
    Ju = quad(fu, T, T + 12.0, epsabs=0.0, epsrel=1e-12, limit=200)[0]
    Iq = quad(fq, T, T + 12.0, epsabs=0.0, epsrel=1e-12, limit=200)[0]
    return Ju, Iq


def _pii_integrals(sol, tau, T, tol):
    """J_u = int_tau^inf u and I_q = int_tau^inf q on the (increasing) grid tau."""
    Ju0, Iq0 = _pii_tail(sol, T)

    def rhs(s, y):
        p = pii_core.eval(sol, s)
        return [-p.u, -p.q]

    r = solve_ivp(rhs, (T, tau[0]), [Ju0, Iq0], method="DOP853", rtol=tol,
                  atol=1e-300, t_eval=tau[::-1])
    if r.status != 0:
        raise RuntimeError(f"integration of u, q failed near t={r.t[-1]:.4g}")
    return r.y[0][::-1], r.y[1][::-1]


def internal_columns(beta, tau, sol, tol=1e-12, branch="superposed"):
    """ln F_0 and (ln F_0)' on an increasing internal grid tau."""
    check_beta(beta)
    tau = np.asarray(tau, dtype=float)
    T = max(T_PLUS, float(tau[-1]))
    if beta == 6:
        tab = b6.integrate_phi(sol, T, float(tau[0]), tol=tol, grid=tau)
        return -tab.tail_integral / 3.0, tab.phi / 3.0
    Ju, Iq = _pii_integrals(sol, tau, T, tol)
    pts = [pii_core.eval(sol, s) for s in tau]
    u = np.array([p.u for p in pts])
    q = np.array([p.q for p in pts])
    if beta == 2:
        return -Ju, u
    if branch == "single":
        return -0.5 * Ju + 0.5 * Iq, 0.5 * (u - q)
    lnF = -0.5 * Ju + np.array([_log_cosh(0.5 * x) for x in Iq])
    return lnF, 0.5 * u - 0.5 * q * np.tanh(0.5 * Iq)


def build_table(beta, t_min=-10.0, t_max=6.0, step=0.05, tol=1e-12, sol=None,
                internal=False, branch="superposed"):
    """CDF/PDF table on a uniform grid (physical time unless internal=True)."""
    check_beta(beta)
    if not step > 0 or not t_min < t_max:
        raise ValueError("need step > 0 and t_min < t_max")
    sol = sol or pii_core.solve_hm()
    n = int(round((t_max - t_min) / step))
    grid = t_min + step * np.arange(n + 1)
    sc = scale_of(beta)
    fac = 1.0 if internal else sc
    lnF, ld = internal_columns(beta, fac * grid, sol, tol=tol, branch=branch)
    ld = fac * ld
    F = np.exp(lnF)
    return DistTable(beta=beta, kappa=beta / 2.0, scale=sc, grid=grid, lnF=lnF,
                     F=F, pdf=F * ld, logderiv=ld, internal=internal, branch=branch)


def pdf_moments(table: DistTable):
    """Mean, variance, skewness of the tabulated pdf (Simpson's rule).

    Returns a dict that also carries the normalization and a status flag;
    status is "truncated" when the pdf is not negligible at an end.
    """
    x, f = table.grid, table.pdf
    norm = simpson(f, x=x)
    mean = simpson(x * f, x=x) / norm
    var = simpson((x - mean) ** 2 * f, x=x) / norm
    skew = simpson((x - mean) ** 3 * f, x=x) / norm / var**1.5
    status = "ok"
    if max(f[0], f[-1]) >= 1e-12:
        status = "truncated"
        warnings.warn(f"pdf not negligible at the table ends (mass outside ~ "
                      f"{table.F[0] + 1 - table.F[-1]:.2e})", RuntimeWarning)
    return {"mean": mean, "variance": var, "skewness": skew, "norm": norm,
            "status": status}


def _f0_jet(beta, t, sol, K, tol=1e-12, branch="superposed"):
    """Jet of F_0 about internal time t, derivatives pushed through the ODEs."""
    p = pii_core.eval(sol, t)
    qj = Jet(pii_core._taylor(t, p.q, p.qp, K))
    g = qj * qj
    u = (-g).integ(p.u)
    lnF0, _ = internal_columns(beta, np.array([t]), sol, tol=tol, branch=branch)
    if beta == 2:
        return u.integ(lnF0[0]).exp()
    if beta == 4:
        T = max(T_PLUS, t)
        Ju, Iq = _pii_integrals(sol, np.array([t]), T, tol)
        lnF2 = u.integ(-Ju[0])
        I = (-qj).integ(Iq[0])
        half = 0.5 * lnF2
        if branch == "single":
            return (half + 0.5 * I).exp()
        return ((half + 0.5 * I).exp() + (half - 0.5 * I).exp()) * 0.5
    # beta = 6: Phi jet from the scalar equation, initial data from the table
    tab = b6.integrate_phi(sol, max(T_PLUS, t + 1.0), t, tol=tol,
                           grid=np.array([t]))
    gp = g.deriv()
    tj = Jet.var(t, K)

    def f(P, Pp):
        gu = g / u
        G = gu - u
        rest = (9.0 * (P + G) * Pp + P * P * P + 3.0 * G * P * P
                + (3.0 * u * u - 3.0 * gp / u - 9.0 * g - 4.0 * tj) * P
                + 4.0 * gp + 3.0 * g * gu + 4.0 * tj * u + 6.0 * u * g - u * u * u)
        return rest * (-1.0 / 9.0)

    P = solve_second_order(f, tab.phi[0], tab.phip[0], K)
    return (P * (1.0 / 3.0)).integ(-tab.tail_integral[0] / 3.0).exp()


def fp_coefficients(n_max, t, beta, sol=None, tol=1e-12, branch="superposed"):
    """Large-x coefficients F_0..F_{n_max} of the Fokker-Planck solution."""
    check_beta(beta)
    if not 0 <= n_max <= 4:
        raise ValueError("n_max must be in [0, 4]")
    sol = sol or pii_core.solve_hm()
    kap = beta / 2.0
    K = 2 * n_max + 4
    F0 = _f0_jet(beta, t, sol, K, tol=tol, branch=branch)
    tj = Jet.var(t, K)
    F = [F0]
    zero = Jet.const(0.0, K)
    for n in range(n_max):
        Fm1 = F[n - 1] if n >= 1 else zero
        Fm2 = F[n - 2] if n >= 2 else zero
        F.append((-kap * F[n].deriv() + (n - 1) * tj * Fm1 - (n - 1) * (n - 2) * Fm2)
                 * (1.0 / (n + 1)))
    d = F0.derivs()
    closed3 = -(kap**3 * d[3] + 2 * t * kap * d[1]) / 6.0
    return FPCoefficients(beta=beta, t=float(t), n_max=n_max,
                          values=np.array([float(x) for x in F]), derivs0=d[: n_max + 2],
                          closed_F3=closed3)
