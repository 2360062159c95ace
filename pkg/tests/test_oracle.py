import math

import numpy as np
import pytest
from scipy.special import airy, gamma

from twpainleve.verification import oracle


def test_ai_at_zero():
    assert oracle.airy_ai(0.0) == pytest.approx(3 ** (-2 / 3) / gamma(2 / 3), rel=1e-15)
    assert oracle.airy_ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)


def test_ai_against_scipy():
    xs = np.linspace(-15, 15, 241)
    ref = airy(xs)
    for x, a, ap in zip(xs, ref[0], ref[1]):
        v, d = oracle.airy_pair(x)
        assert abs(v - a) <= 1e-13 and abs(d - ap) <= 1e-12


def test_ai_positive_decaying():
    vals = [oracle.airy_ai(x) for x in np.linspace(0, 15, 31)]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_branch_overlap():
    assert oracle.overlap_check() <= 1e-12


def test_domain():
    with pytest.raises(ValueError):
        oracle.airy_ai(16.0)
    with pytest.raises(ValueError):
        oracle.fredholm_tw2(7.0)
    with pytest.raises(ValueError):
        oracle.fredholm_tw2(0.0, m=10)


def test_f2_limits_and_convergence():
    assert oracle.fredholm_tw2(6.0) == pytest.approx(1.0, abs=1e-9)
    for t in (-8.0, -2.0, 0.0, 3.0):
        assert abs(oracle.fredholm_tw2(t, 40) - oracle.fredholm_tw2(t, 80)) <= 1e-9


def test_f2_known_value():
    # F_2(-2) from the standard tables of the GUE edge law
    assert oracle.fredholm_tw2(-2.0) == pytest.approx(0.41322414, abs=1e-7)
