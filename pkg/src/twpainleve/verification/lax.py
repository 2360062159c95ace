"""Lax pairs polynomial in the spectral variable x and their compatibility.

Each pair is stored as 2x2 arrays of ascending coefficient lists in x.  The
compatibility residual is

    Z = c dL/dt - dB/dx + [L, B],

which vanishes identically on solutions for the right normalization c.  For
kappa = 3, dL/dt comes from the ODE right-hand sides; for the kappa = 1, 2
pairs it comes from Taylor jets of q, so no finite differences enter either.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..jets import Jet
from ..pii_core import PIISolution, _taylor, eval as pii_eval
from .chain import ChainVars, chain_rates


@dataclass(frozen=True)
class LaxEval:
    L: list  # 2x2 nested lists of ascending coefficient lists in x
    B: list
    Lt: list  # dL/dt, same layout
    phi_choice: str = "1"

    def at(self, x):
        ev = lambda M: np.array([[np.polyval(e[::-1], x) for e in row] for row in M])
        dx = lambda M: np.array([[np.polyval(np.polyder(e[::-1]), x) if len(e) > 1 else 0.0
                                  for e in row] for row in M])
        return ev(self.L), ev(self.B), dx(self.B), ev(self.Lt)

    def residual(self, x, c):
        L, B, Bx, Lt = self.at(x)
        return c * Lt - Bx + L @ B - B @ L


def _f(v):
    return [float(x) for x in v]


def kappa3_pair(c: ChainVars, rates=None):
    """Matrices of the kappa = 3 pair in the phi = 1 gauge."""
    t, q2, q1, q0, e1, e2, e3, U, D = c.t, c.q2, c.q1, c.q0, c.e1, c.e2, c.e3, c.U, c.D
    d = rates or chain_rates(c)
    th = (U + t * t / 2) / 3
    L = [[_f([(-t + q0) / 2, -q1 / 2, (1 + q2) / 2]), _f([-e3, e2, -e1, 1.0])],
         [_f([-(D * e1 - 2 * q2 * q1) / 4, -D / 4]), _f([(-t - q0) / 2, q1 / 2, (1 - q2) / 2])]]
    B = [[_f([(th - e1 * q2 / 3 + q1) / 2, (-1 - q2) / 2]),
          _f([-e2 / 3, 2 * e1 / 3, -1.0])],
         [_f([D / 4]), _f([(th + e1 * q2 / 3 - q1) / 2, (-1 + q2) / 2])]]
    Dp = 2 * q2 * d["q2"]
    Lt = [[_f([(-1 + d["q0"]) / 2, -d["q1"] / 2, d["q2"] / 2]),
           _f([-d["e3"], d["e2"], -d["e1"], 0.0])],
          [_f([-(Dp * e1 + D * d["e1"] - 2 * (d["q2"] * q1 + q2 * d["q1"])) / 4, -Dp / 4]),
           _f([(-1 - d["q0"]) / 2, d["q1"] / 2, -d["q2"] / 2])]]
    return LaxEval(L=L, B=B, Lt=Lt, phi_choice="1")


def trace_B(lax: LaxEval):
    """Coefficient list of Tr B."""
    b1, b2 = lax.B[0][0], lax.B[1][1]
    n = max(len(b1), len(b2))
    return [(b1[k] if k < len(b1) else 0.0) + (b2[k] if k < len(b2) else 0.0) for k in range(n)]


def lax_zero_curvature(t, x, c: ChainVars, normalization, rates=None):
    """Compatibility residual of the kappa = 3 pair at (t, x)."""
    return kappa3_pair(c, rates).residual(x, normalization)


def _appendix_entries(kappa, q, qp, u, t, phi):
    """Coefficient lists (ascending in x) of the Appendix pairs.

    Works on floats and on jets; phi is the gauge function (-q for kappa = 1).
    """
    if kappa == 1:
        w = qp / q
        s = (-(w * w) + 2 * q * q + t) * 0.5
        m = w * w - 2 * t
        L = [[[-t * 0.5 + s, 0.0, 0.5], [-qp, -q]],
             [[(w * m + 2) / (4 * q), -m / (4 * q), w / (4 * q), -1 / (4 * q)],
              [-t * 0.5 - s, 0.0, 0.5]]]
        B = [[[(2 * u + w) * 0.5, -0.5], [q]],
             [[(3 * w * w - 2 * t) / (4 * q), -2 * w / (4 * q), 1 / (4 * q)],
              [(2 * u - w) * 0.5, -0.5]]]
        return L, B
    if kappa == 2:
        c0 = -2 * q * q - 2 * qp - t
        L = [[[-t * 0.5, -q, 0.5], [phi * c0, 0.0, phi]],
             [[(2 * qp - t - 2 * q * q) / (4 * phi), 0.0, 1 / (4 * phi)],
              [-t * 0.5, q, 0.5]]]
        B = [[[(u + q) * 0.5, -0.5], [0.0, -phi]],
             [[0.0, -1 / (4 * phi)], [(u - q) * 0.5, -0.5]]]
        return L, B
    raise ValueError("kappa must be 1 or 2")


def _jets(t, sol: PIISolution, K=4):
    p = pii_eval(sol, t)
    qj = Jet(_taylor(t, p.q, p.qp, K))
    u = (-(qj * qj)).integ(p.u)
    tj = Jet.var(t, K)
    return p, qj, u, tj


def appendix_pair(kappa, t, sol: PIISolution):
    """LaxEval of the kappa = 1 or 2 Appendix pair at t (phi normalized to 1 at t
    for kappa = 2; for kappa = 1 the gauge is phi = -q, already substituted)."""
    p, qj, u, tj = _jets(t, sol)
    phi = (-qj).integ(0.0).exp() if kappa == 2 else -qj
    Lj, Bj = _appendix_entries(kappa, qj, qj.deriv(), u, tj, phi)
    val = lambda e: [float(x) for x in e]
    dt = lambda e: [x.c[1] if isinstance(x, Jet) else 0.0 for x in e]
    L = [[val(e) for e in row] for row in Lj]
    B = [[val(e) for e in row] for row in Bj]
    Lt = [[dt(e) for e in row] for row in Lj]
    return LaxEval(L=L, B=B, Lt=Lt, phi_choice="-q" if kappa == 1 else "exp(-int q)")


def appendix_identities(kappa, t, sol: PIISolution):
    """Residuals of the scalar identities attached to each Appendix pair."""
    p, qj, u, tj = _jets(t, sol, K=6)
    if kappa == 1:
        Q = -(qj.deriv() / qj)
        d = Q.derivs()
        Qd = Q.deriv()
        U = Q**4 * 0.5 - tj * Q * Q - Q - Qd * Qd * 0.5
        return {
            "Q_equation": d[2] - (2 * d[0] ** 3 - 2 * t * d[0] - 1),
            "U_rate": U.c[1] + d[0] ** 2,
            "U_vs_u": float(U) + t * t / 2 - (2 * p.u + p.qp / p.q),
            # (1/2)(U + t^2/2 + Q) collapses to u
            "logderiv": 0.5 * (float(U) + t * t / 2 + d[0]) - p.u,
        }
    if kappa == 2:
        Q2 = qj * qj * 2 + qj.deriv() * 2 + tj
        d = Q2.derivs()
        U = Q2 * Q2 * 0.5 - tj * Q2 - Q2.deriv() * Q2.deriv() / (Q2 * 2) + Q2.recip() * 0.5
        return {
            "Q2_rate": d[1] - (2 * p.q * d[0] + 1),
            "Q2_equation": 2 * d[0] * d[2] - d[1] ** 2 - (2 * d[0] ** 2 * (d[0] - t) - 1),
            "U_vs_u": float(U) + t * t / 2 - 2 * (p.u - p.q),
        }
    raise ValueError("kappa must be 1 or 2")


def appendix_lax(kappa, t, x, sol: PIISolution, normalization=None):
    """Max compatibility residual of an Appendix pair at (t, x) plus identities."""
    c = kappa if normalization is None else normalization
    Z = appendix_pair(kappa, t, sol).residual(x, c)
    return float(np.max(np.abs(Z))), appendix_identities(kappa, t, sol)
