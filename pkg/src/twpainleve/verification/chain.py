"""Reconstruction of the kappa = 3 variable chain from a linear-system state.

Given (mu_+, mu_-, nu) and the Hastings-McLeod point, the chain is

    mu = (mu_+ + mu_-)/2,  chi = (mu_+ - mu_-)/2,  q2 = mu/chi,  q1 = nu/chi,
    r = -q'/q,  r' = r^2 - t - 2 q^2,  q0 = -(r' + r^2 q2 + r q1),

followed by e1, e2, e3 solved from the telescoping relations and U from u_r.
Every formula is written once, over a generic number type, so the same code
runs on floats and on Taylor jets (exact t-derivatives).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from ..jets import Jet
from ..pii_core import PIIPoint, PIISolution, _taylor, eval as pii_eval


class SkipPoint(ValueError):
    """Coordinate singularity of the chain (chi ~ 0 or q2^2 ~ 1)."""


@dataclass(frozen=True)
class ChainVars:
    t: float
    r: object
    rp: object
    q2: object
    q1: object
    q0: object
    e1: object
    e2: object
    e3: object
    U: object
    u_r: object
    D: object  # q2^2 - 1, computed without cancellation

    def value(self):
        """Float snapshot (jets collapse to their constant term)."""
        kw = {f.name: float(getattr(self, f.name)) if f.name != "t" else self.t
              for f in fields(self)}
        return ChainVars(**kw)

    def deriv(self):
        """d/dt of every jet-valued field, as a dict of floats."""
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Jet):
                out[f.name] = float(v.c[1]) if v.K >= 1 else 0.0
        return out


def _build(t, q, qp, u, mp, mm, nu, tt=None):
    tt = t if tt is None else tt
    chi = (mp - mm) * 0.5
    mu = (mp + mm) * 0.5
    q2 = mu / chi
    q1 = nu / chi
    D = (mp * mm) / (chi * chi)
    r = -qp / q
    rp = r * r - tt - 2.0 * q * q
    q0 = -(rp + r * r * q2 + r * q1)
    e1 = r + 2.0 * q2 * q1 / D
    e2 = r * e1 + (2.0 * q2 * q0 + q1 * q1 + 2.0 * tt) / D
    e3 = r * e2 + (2.0 * q1 * q0 + 2.0 + 2.0 * q2) / D
    u_r = 2.0 * u + qp / q - tt * tt * 0.5
    U = u_r + 2.0 * q1 / D
    return dict(r=r, rp=rp, q2=q2, q1=q1, q0=q0, e1=e1, e2=e2, e3=e3, U=U, u_r=u_r, D=D)


def reconstruct_chain(t, p: PIIPoint, s, chi_tol=1e-6, d_tol=1e-8):
    """ChainVars at t from a state s = (mu_+, mu_-, nu)."""
    mp, mm, nu = (float(x) for x in s[:3])
    chi = 0.5 * (mp - mm)
    scale = max(abs(mp), abs(mm), abs(nu))
    if abs(chi) < chi_tol * scale:
        raise SkipPoint(f"|chi| too small at t={t}")
    if abs(mp * mm) / chi**2 < d_tol:
        raise SkipPoint(f"|q2^2 - 1| too small at t={t}")
    return ChainVars(t=float(t), **_build(t, p.q, p.qp, p.u, mp, mm, nu))


def state_jet(t, sol: PIISolution, s, K=8):
    """Taylor jets of q, u and the linear-system state about t."""
    p = pii_eval(sol, t)
    qj = Jet(_taylor(t, p.q, p.qp, K))
    g = qj * qj
    gp = g.deriv()
    u = (-g).integ(p.u)
    a11 = gp / (g * 3.0)
    a31 = u / g * (-2.0 / 3.0)
    a32 = g * (2.0 / 3.0)
    c = np.zeros((3, K + 1))
    c[:, 0] = s[:3]
    for n in range(K):
        mp, mm, nu = (Jet(c[i].copy()) for i in range(3))
        d = (a11 * mp - nu * (1.0 / 3.0), a11 * mm * -1.0 + nu * (1.0 / 3.0),
             a32 * mm + a31 * mp)
        for i in range(3):
            c[i, n + 1] = d[i].c[n] / (n + 1)
    return qj, u, [Jet(c[i]) for i in range(3)]


def chain_jet(t, sol: PIISolution, s, K=8):
    """ChainVars whose fields are jets in (t - t0); derivatives are exact."""
    qj, u, (mp, mm, nu) = state_jet(t, sol, s, K)
    tt = Jet.var(t, K)
    return ChainVars(t=float(t), **_build(t, qj, qj.deriv(), u, mp, mm, nu, tt=tt))


def first_integrals(c: ChainVars):
    """(I2, I1, I0) and a magnitude scale for each (largest single term)."""
    D2 = c.D * 0.5
    t = c.t
    terms2 = [(c.e1 * c.e1 - c.e2) * D2, -c.e1 * c.q2 * c.q1,
              c.q2 * c.q0, c.q1 * c.q1 * 0.5, t]
    terms1 = [(c.e3 - c.e1 * c.e2) * D2, c.e2 * c.q2 * c.q1, -c.q1 * c.q0, -c.q2, -1.0]
    terms0 = [c.e1 * c.e3 * D2, -c.e3 * c.q2 * c.q1, c.q0 * c.q0 * 0.5, c.U,
              -c.e1 * c.q2, 2.0 * c.q1]
    out = []
    for terms in (terms2, terms1, terms0):
        out.append((sum(terms), max(abs(float(x)) for x in terms)))
    return out


def telescoping(c: ChainVars):
    """The three e_k relations weighted by r^3, r^2, r plus the quadratic
    integral, against the closed combined form.

    Returns (difference, scale); the difference vanishes identically.
    """
    r, D, q2, q1, q0 = c.r, c.D, c.q2, c.q1, c.q0
    a1 = c.e1 * D - (r * D + 2 * q2 * q1)
    a2 = c.e2 * D - (r * c.e1 * D + 2 * q2 * q0 + q1 * q1 + 2 * c.t)
    a3 = c.e3 * D - (r * c.e2 * D + 2 * q1 * q0 + 2 + 2 * q2)
    a4 = r * c.e3 * D + q0 * q0 + 2 * c.U - 2 * c.e1 * q2 + 4 * q1
    # the e_k relations enter as right minus left so the e_k terms telescope
    parts = [-(r**3) * a1, -(r**2) * a2, -r * a3, a4]
    combined = ((r * r * q2 + r * q1 + q0) ** 2 - r**4 + 2 * c.t * r * r + 2 * r
                + 2 * c.U + 2 * ((r - c.e1) * q2 + 2 * q1))
    scale = max(abs(float(x)) for x in parts + [r**4, c.U, (r * r * q2 + r * q1 + q0) ** 2])
    return sum(parts) - combined, scale


def reduced_integral(c: ChainVars):
    """Quadratic integral in (r, q2, q1, q0, u_r); zero on the trajectory."""
    return ((c.r**2 * c.q2 + c.r * c.q1 + c.q0) ** 2 - c.r**4 + 2 * c.t * c.r**2
            + 2 * c.r + 2 * c.u_r)


def chain_rates(c: ChainVars):
    """Time derivatives of (e1, e2, e3, q2, q1, q0, U) from the ODE system."""
    e1, e2, e3, q2, q1, q0, D = c.e1, c.e2, c.e3, c.q2, c.q1, c.q0, c.D
    return {
        "e1": -((e1 * e1 - 2 * e2) * q2 - e1 * q1 + 3 * q0) / 3,
        "e2": -2 - ((e1 * e2 - 3 * e3) * q2 - 2 * e2 * q1 + 2 * e1 * q0) / 3,
        "e3": -(2 * e1 + e1 * e3 * q2 - 3 * e3 * q1 + e2 * q0) / 3,
        "q2": (2 * e1 * D - 3 * q2 * q1) / 3,
        "q1": ((e1 * e1 + e2) * D - 2 * e1 * q2 * q1) / 3,
        "q0": -q2 + ((e1 * e2 + 3 * e3) / 2 * D - e2 * q2 * q1) / 3,
        "U": (2 * e2 - e1 * e1) / 3,
    }


def ode_residuals(c: ChainVars, d: dict):
    """Left-hand sides of the chain ODEs given derivatives d (floats).

    Returns name -> (residual, scale) with scale the largest term magnitude.
    """
    v = c.value()
    e1, e2, e3, q2, q1, q0, D, r, rp = v.e1, v.e2, v.e3, v.q2, v.q1, v.q0, v.D, v.r, v.rp
    t = v.t

    def pack(*terms):
        return sum(terms), max(abs(x) for x in terms)

    return {
        "e1_rate": pack(3 * d["e1"], (e1 * e1 - 2 * e2) * q2, -e1 * q1, 3 * q0),
        "e2_rate": pack(3 * (d["e2"] + 2), (e1 * e2 - 3 * e3) * q2, -2 * e2 * q1, 2 * e1 * q0),
        "e3_rate": pack(3 * d["e3"], 2 * e1, e1 * e3 * q2, -3 * e3 * q1, e2 * q0),
        "q2_rate": pack(3 * d["q2"], -2 * e1 * D, 3 * q2 * q1),
        "q1_rate": pack(3 * d["q1"], -(e1 * e1 + e2) * D, 2 * e1 * q2 * q1),
        "q0_rate": pack(3 * (d["q0"] + q2), -(e1 * e2 + 3 * e3) / 2 * D, e2 * q2 * q1),
        "U_rate": pack(3 * d["U"], -(2 * e2 - e1 * e1)),
        "q2_rate_via_r": pack(6 * d["q2"], -(e1 + 3 * r) * D),
        "q1_rate_via_r": pack(3 * d["q1"], -(e2 + r * e1) * D),
        "q0_rate_via_r": pack(6 * d["q0"], -(3 * e3 + r * e2) * D, 6 * q2),
        "u_r_rate": pack(d["u_r"], r * r),
        "q0_definition": pack(rp, r * r * q2, r * q1, q0),
        "q2_rate_reduced": pack(3 * d["q2"], -2 * r * D, -q2 * q1),
        "q1_rate_reduced": pack(3 * d["q1"], -2 * r * q2 * q1, -q1 * q1, -2 * (t - r * r), 2 * rp * q2),
    }
