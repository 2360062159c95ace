"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
Criteria 1 and 2 compare against closed-form tail constants that the numerics
do not reproduce; they are left failing on purpose (see the decisions ledger).
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import simpson

from twpainleve import beta6_connection as b6
from twpainleve import distribution as ds
from twpainleve import tail_series as ts

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = []

PHI0 = 3 / (256 * math.pi)


def _record(n, ok, detail):
    line = f"Criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _suite(report, names):
    bad = [k for k in names if not report[k]["passed"]]
    worst = max(report[k]["max_residual"] / report[k]["tolerance"]
                for k in names if report[k]["tolerance"] > 0) if names else 0.0
    return not bad, f"worst residual/tol {worst:.2e}" + (f"; failing {bad}" if bad else "")


@pytest.fixture(scope="module")
def phi_table(sol):
    return b6.integrate_phi(sol, b6.DEFAULT_T0, -12.0, tol=1e-12)


def test_criterion_1_right_tail_constant(phi_table):
    t = 8.0
    phi = float(phi_table.interp(t))
    c = phi * t**4 * math.exp(4 * t**1.5 / 3)
    rel = abs(c / PHI0 - 1)
    _record(1, rel <= 5e-3, f"Phi(8) t^4 e^(4t^1.5/3) = {c:.6g} vs 3/(256 pi) = {PHI0:.6g}, rel {rel:.3g} (tol 5e-3)")


def test_criterion_2_left_tail_law(phi_table):
    t = np.linspace(-12.0, -8.0, 81)
    phi = phi_table.interp(t)
    law = t**2 / 4 - np.sqrt(-2 * t) + 1 / (8 * t)
    err = float(np.max(np.abs(phi - law)))
    _record(2, err <= 1e-3, f"max |3(ln F0)' - law| on [-12,-8] = {err:.3g} (tol 1e-3)")


def test_criterion_3_route_equivalence(report):
    ok, d = _suite(report, ["beta6.route_equivalence"])
    r = report["beta6.route_equivalence"]["max_residual"]
    _record(3, ok, f"sup |Phi_scalar - Phi_linear| = {r:.3g} (tol 1e-6)")


def test_criterion_4_eta_residual(report):
    ok, d = _suite(report, ["beta6.eta_equation"])
    r = report["beta6.eta_equation"]["max_residual"]
    _record(4, ok, f"weighted eta residual on [-8,6] = {r:.3g} (tol 1e-5)")


def test_criterion_5_first_integrals(report):
    names = ["chain.I2", "chain.I1", "chain.I0", "chain.conservation_drift"]
    ok, d = _suite(report, names)
    vals = ", ".join(f"{k.split('.')[1]} {report[k]['max_residual']:.2g}" for k in names)
    _record(5, ok, f"{vals} (tol 1e-7 / 1e-8)")


def test_criterion_6_zero_curvature(report):
    names = ["lax.kappa3", "lax.kappa1", "lax.kappa2"]
    ok, d = _suite(report, names)
    vals = ", ".join(f"{k.split('.')[1]} {report[k]['max_residual']:.2g}" for k in names)
    _record(6, ok, f"normalization 1: {vals} (tol 1e-6)")


def test_criterion_7_oracle(report):
    names = ["oracle.fredholm_vs_painleve", "oracle.fredholm_self_convergence"]
    ok, d = _suite(report, names)
    a, b = (report[k]["max_residual"] for k in names)
    _record(7, ok, f"sup |dF| = {a:.3g} (tol 1e-6), self-convergence {b:.3g} (tol 1e-9)")


def test_criterion_8_series_identities():
    plus = ts.build_plus(4)
    minus = ts.build_minus(4)
    cancel = plus.identity(0) == 0 and plus.identity(1) == 0
    h1 = minus.exact["h"][1]
    phi0 = plus.exact["phi"][0]
    # phi in units of C0^2 = 1/(4 pi); 3/(256 pi) = (3/64) / (4 pi)
    ok = cancel and h1 == Fraction(1, 16) and phi0 == Fraction(3, 64) and \
        math.isclose(plus.phi[0], PHI0, rel_tol=1e-15)
    _record(8, ok, f"cancellations exact: {cancel}; h1 = {h1}; phi0 = ({phi0})/(4 pi) = {plus.phi[0]:.10g}")


def test_criterion_9_frobenius(report):
    names = [f"frobenius.{k}{f}.{c}" for k in ("pole", "zero") for f in (1, 2, 3)
             for c in ("halving", "free_constants", "exponents")]
    ok, _ = _suite(report, names)
    ratios = [float(report[f"frobenius.{k}{f}.halving"]["note"].split()[-1])
              for k in ("pole", "zero") for f in (1, 2, 3)]
    counts = [report[f"frobenius.pole{f}.free_constants"]["note"].split()[-1] for f in (1, 2, 3)]
    _record(9, ok, f"min halving ratio {min(ratios):.1f} (need >= 256); free constants {'/'.join(counts)}")


def test_criterion_10_distribution(sol):
    worst_fd, worst_mass, mono = 0.0, 0.0, True
    for beta in ds.BETAS:
        T = ds.build_table(beta, -10.0, 6.0, 0.05, sol=sol)
        mono &= bool(np.all(np.diff(T.F) >= 0) and T.F.min() >= 0 and T.F.max() <= 1)
        worst_mass = max(worst_mass, abs(simpson(T.pdf, x=T.grid) - 1))
        h = 0.05
        L = T.lnF
        fd = (L[:-4] - 8 * L[1:-3] + 8 * L[3:-1] - L[4:]) / (12 * h)
        worst_fd = max(worst_fd, float(np.max(np.abs(fd - T.logderiv[2:-2]))))
    ok = mono and worst_mass <= 1e-4 and worst_fd <= 1e-6
    _record(10, ok, f"monotone {mono}; max |int pdf - 1| {worst_mass:.2g} (tol 1e-4); "
                    f"max |FD - logderiv| {worst_fd:.2g} (tol 1e-6)")


def test_criterion_11_hastings_mcleod(report):
    names = ["pii.residual", "pii.positivity", "pii.u_integral"]
    ok, _ = _suite(report, names)
    a, c = report["pii.residual"]["max_residual"], report["pii.u_integral"]["max_residual"]
    _record(11, ok, f"weighted PII residual {a:.2g} (tol 1e-10); {report['pii.positivity']['note']}; "
                    f"u integral deviation {c:.2g} (tol 1e-8)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
