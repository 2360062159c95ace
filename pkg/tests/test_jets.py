import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twpainleve.jets import Jet, solve_second_order

K = 8
coef = st.lists(st.floats(-3, 3), min_size=K + 1, max_size=K + 1)


def _poly(c, s):
    return sum(ci * s**i for i, ci in enumerate(c))


def test_exp_of_variable():
    e = Jet.var(0.0, K).exp()
    np.testing.assert_allclose(e.c, [1 / math.factorial(k) for k in range(K + 1)], rtol=1e-15)


def test_derivs_and_integ():
    j = Jet.var(2.0, 4) * Jet.var(2.0, 4) * Jet.var(2.0, 4)  # t^3 about 2
    np.testing.assert_allclose(j.derivs(), [8, 12, 12, 6, 0])
    np.testing.assert_allclose(j.deriv().integ(8.0).c, j.c)


@given(coef, coef)
def test_product_matches_polynomial(a, b):
    s = 1e-3
    p = Jet(a) * Jet(b)
    expect = _poly(a, s) * _poly(b, s)
    assert _poly(p.c, s) == pytest.approx(expect, rel=1e-9, abs=1e-9)


@given(coef.filter(lambda c: abs(c[0]) > 0.1))
def test_recip_inverts(a):
    one = Jet(a) * Jet(a).recip()
    np.testing.assert_allclose(one.c, np.eye(K + 1)[0], atol=1e-6 * (1 + max(map(abs, a))) ** K
                               / abs(a[0]) ** K)


def test_second_order_solver_harmonic():
    y = solve_second_order(lambda y, yp: -1.0 * y, 0.0, 1.0, 10)
    np.testing.assert_allclose(y.derivs()[:10], [0, 1, 0, -1, 0, 1, 0, -1, 0, 1], atol=1e-12)


def test_float_and_scalar_ops():
    j = 2.0 - Jet.const(0.5, 3) / 2.0
    assert float(j) == 1.75
    assert float(1.0 / Jet.const(4.0, 2)) == 0.25
    assert float(Jet.const(3.0, 2) ** 2) == 9.0
