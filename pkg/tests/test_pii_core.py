import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twpainleve import pii_core
from twpainleve.pii_core import PIIPoint

C0 = 1 / (2 * math.sqrt(math.pi))
# independent high-precision boundary-value solve (mpmath, 30 digits)
Q0_ORACLE = 0.36706155154808
QP0_ORACLE = -0.29537210544755


def test_seed_plus_leading_term():
    q, _ = pii_core.seed_plus(9.0, 1)
    assert q == pytest.approx(C0 * math.exp(-18) / 9**0.25, rel=1e-14)


def test_seed_plus_approaches_leading_order():
    lead = lambda t: C0 * math.exp(-2 * t**1.5 / 3) * t**-0.25
    r9 = pii_core.seed_plus(9.0)[0] / lead(9.0) - 1
    r16 = pii_core.seed_plus(16.0)[0] / lead(16.0) - 1
    assert abs(r16) < abs(r9) < 0.05


def test_seed_minus_leading_term():
    q, _ = pii_core.seed_minus(-16.0, 1)
    assert q == pytest.approx(math.sqrt(8), rel=1e-15)


def test_seed_domain_errors():
    with pytest.raises(ValueError):
        pii_core.seed_plus(2.0)
    with pytest.raises(ValueError):
        pii_core.seed_minus(-1.0)
    with pytest.raises(ValueError):
        pii_core.seed_plus(9.0, 0)


def test_value_at_origin(sol):
    p = pii_core.eval(sol, 0.0)
    assert p.q == pytest.approx(Q0_ORACLE, abs=1e-13)
    assert p.qp == pytest.approx(QP0_ORACLE, abs=1e-13)


@pytest.mark.parametrize("t", [8.0, -8.0])
def test_boundary_consistency(sol, t):
    seed = pii_core.seed_plus if t > 0 else pii_core.seed_minus
    q = sol.q_qp(t)[0]
    assert abs(q / seed(t)[0] - 1) <= 10 * sol.tol


def test_residual_random_points_fd(sol):
    rng = np.random.default_rng(7)
    ts_ = rng.uniform(sol.t_min, sol.t_max, 1000)
    worst = 0.0
    for t in ts_:
        q, _ = sol.q_qp(t)
        # q'' by centered differences of q', refined once (Richardson)
        d = lambda h: (sol.q_qp(t + h)[1] - sol.q_qp(t - h)[1]) / (2 * h)
        qpp = (4 * d(1e-3) - d(2e-3)) / 3
        worst = max(worst, abs(qpp - 2 * q**3 - t * q) / (1 + abs(q) ** 3))
    assert worst < 1e-9  # FD noise floor; the dense residual is checked below
    dense = max(abs(sol.residual(t)) / (1 + abs(sol.q_qp(t)[0]) ** 3) for t in ts_)
    assert dense <= 1e-10


def test_hamiltonian_derivative(sol):
    h = 1e-4
    for t in np.linspace(-8, 6, 29):
        du = (pii_core.eval(sol, t + h).u - pii_core.eval(sol, t - h).u) / (2 * h)
        assert abs(du + pii_core.eval(sol, t).g) <= 1e-7


def test_g_second_derivative_identity(sol):
    h = 1e-3
    for t in np.linspace(-8, 6, 15):
        p = pii_core.eval(sol, t)
        gm, g0, gp = (pii_core.eval(sol, t + s).g for s in (-h, 0.0, h))
        gpp = (gp - 2 * g0 + gm) / h**2
        assert abs(gpp - 6 * p.g**2 - 4 * t * p.g - 2 * p.u) <= 1e-6 * (1 + abs(gpp))


def test_positivity_at_nodes(sol):
    assert np.all(sol.nodes[:, 1] > 0)
    for t in sol.nodes[:, 0]:
        assert pii_core.eval(sol, t).u > 0


def test_u_tail_integral(sol):
    for t in (-8.0, -3.0, 0.0, 2.5, 7.0):
        assert abs(pii_core.integral_q2(sol, t) - pii_core.eval(sol, t).u) <= 1e-8


def test_u_left_leading_order(sol):
    assert pii_core.eval(sol, -10.0).u == pytest.approx(25.0, rel=2e-3)


def test_u_vanishes_right(sol):
    assert 0 < pii_core.eval(sol, 12.0).u < 1e-12


def test_pii_point_hamiltonian():
    p = PIIPoint.from_q(0.5, 0.3, -0.2)
    assert p.u == pytest.approx(0.04 - 0.5 * 0.09 - 0.0081)
    assert p.gp == pytest.approx(2 * 0.3 * -0.2)


def test_solve_hm_rejects_bad_input():
    with pytest.raises(ValueError):
        pii_core.solve_hm(t_min=-5.0)
    with pytest.raises(ValueError):
        pii_core.solve_hm(tol=1e-2)


@settings(max_examples=60, deadline=None)
@given(a=st.floats(-12, 8), b=st.floats(-12, 8))
def test_u_monotone(sol, a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    assert pii_core.eval(sol, hi).u <= pii_core.eval(sol, lo).u


@settings(max_examples=60, deadline=None)
@given(t=st.floats(-30, 30))
def test_eval_everywhere_positive(sol, t):
    p = pii_core.eval(sol, t)
    assert p.q > 0 or t > 25  # q underflows only far right
    assert p.u >= 0
