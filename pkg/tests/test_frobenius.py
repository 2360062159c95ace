from fractions import Fraction as Fr

import pytest
import sympy as sp

from twpainleve.verification import frobenius as fb
from twpainleve.verification import suite

T0 = Fr(7, 10)


def _sympy_local_q(kind, t0, free, n):
    """Local solution of q'' = 2q^3 + t q by undetermined coefficients."""
    z = sp.symbols("z")
    c = sp.symbols(f"c0:{n}")
    t0 = sp.Rational(t0.numerator, t0.denominator)
    if kind == "pole":
        q = free["eps"] / z + sum(c[k] * z**k for k in range(n))
        known = {c[3]: free["a3"]}
    else:
        q = sum(c[k] * z**k for k in range(n))
        known = {c[0]: 0, c[1]: free["a0"]}
    eq = sp.expand((sp.diff(q, z, 2) - 2 * q**3 - (t0 + z) * q) * z**3)
    for p in range(0, n + 1):
        co = sp.expand(eq.coeff(z, p)).subs(known)
        unk = [x for x in c if co.has(x) and x not in known]
        if len(unk) == 1:
            known[unk[0]] = sp.solve(co, unk[0])[0]
    return q.subs(known), z


def test_pole_laurent_against_sympy():
    a = fb.pii_laurent_pole(T0, 1, Fr(3, 10), 8)
    q, z = _sympy_local_q("pole", T0, {"eps": 1, "a3": sp.Rational(3, 10)}, 8)
    # a[k] multiplies z^{k-1}
    for k in range(1, 7):
        assert Fr(str(q.coeff(z, k - 1))) == a[k]


def test_pole_low_order_data():
    for eps in (1, -1):
        a = fb.pii_laurent_pole(T0, eps, Fr(1, 7), 6)
        assert a[0] == eps and a[1] == 0
        assert a[2] == -eps * T0 / 6
        assert a[3] == Fr(-eps, 4)
        assert a[4] == Fr(1, 7)
        g = fb.g_series(a)
        assert g[0] == 1 and g[1] == 0


def test_zero_taylor_against_sympy():
    a = fb.pii_taylor_zero(T0, Fr(6, 5), 8)
    q, z = _sympy_local_q("zero", T0, {"a0": sp.Rational(6, 5)}, 9)
    for k in range(6):
        assert Fr(str(q.coeff(z, k + 1))) == a[k]
    assert a[1] == 0


def test_hamiltonian_constant_at_pole():
    a = fb.pii_laurent_pole(T0, 1, Fr(3, 10), 10)
    z = sp.symbols("z")
    q = sum(sp.Rational(x.numerator, x.denominator) * z ** (k - 1) for k, x in enumerate(a))
    t = sp.Rational(7, 10) + z
    u = sp.expand(sp.diff(q, z) ** 2 - t * q**2 - q**4)
    assert Fr(str(u.coeff(z, 0))) == fb.hamiltonian_u0(a, T0)


def _family(kind, fam):
    return fb.local_family(kind, fam, suite.FROB_T0, suite.FROB_FREE[(kind, fam)], N=10,
                           u0=suite.FROB_U0, pii=suite.FROB_PII[kind])


@pytest.mark.parametrize("kind,fam", list(fb.FAMILIES))
def test_halving_scaling(kind, fam):
    ls = _family(kind, fam)
    r1, r2 = fb.local_residual(ls, 0.2), fb.local_residual(ls, 0.1)
    assert all(a / b >= 2**8 for a, b in zip(r1, r2))


@pytest.mark.parametrize("kind,fam", list(fb.FAMILIES))
def test_free_constant_counts(kind, fam):
    cnt = fb.free_constant_count(kind, fam, t0=suite.FROB_T0, u0=suite.FROB_U0,
                                 N=10, pii=suite.FROB_PII[kind])
    assert cnt == fam


@pytest.mark.parametrize("kind,fam", list(fb.FAMILIES))
def test_leading_exponents(kind, fam):
    ls = _family(kind, fam)
    assert set(ls.exponents) <= fb.EXPONENT_SET
    assert tuple(fb.leading_exponents(ls)) == tuple(ls.exponents)


def test_pole_family1_forced_zeros():
    ls = _family("pole", 1)
    assert ls.M[1] == ls.K[1] == ls.S[1] == 0


def test_pole_family3_relation():
    ls = _family("pole", 3)
    a = fb.pii_laurent_pole(Fr(suite.FROB_T0), 1, Fr(suite.FROB_PII["pole"]["a3"]), 14)
    g = fb.g_series(a)
    assert ls.K[0] == -3 * (3 * ls.M[2] + g[2] * ls.M[0])


def test_zero_family_u_value():
    ls = _family("zero", 2)
    assert ls.u0 == Fr(6, 5) ** 2
    assert set(ls.free) == {"K0", "K1"}


def test_pole_family3_unit_data_and_superposition():
    ls = fb.local_family("pole", 3, suite.FROB_T0, {"M0": 1, "M1": 0, "K0": 0}, N=10,
                         u0=suite.FROB_U0, pii=suite.FROB_PII["pole"])
    r1, r2 = fb.local_residual(ls, 0.2), fb.local_residual(ls, 0.1)
    assert all(a / b >= 2**8 for a, b in zip(r1, r2))
    other = _family("pole", 3)
    mix = fb.combine([ls, other], [Fr(2), Fr(-1, 3)])
    r1, r2 = fb.local_residual(mix, 0.2), fb.local_residual(mix, 0.1)
    assert all(a / b >= 2**8 for a, b in zip(r1, r2))


def test_completeness_other_exponents():
    # no solutions outside the declared exponent patterns
    for kind in ("pole", "zero"):
        for e in (Fr(-2), Fr(-7, 3)):
            _, cnt = fb.solution_space(kind, (e, e, e - 1), Fr(1, 3), Fr(2, 7), 10,
                                       pii=suite.FROB_PII[kind])
            assert cnt == 0


@pytest.mark.parametrize("kind,fam", list(fb.FAMILIES))
def test_recursions_rederived_hold(kind, fam):
    ls = _family(kind, fam)
    assert not any(fb.corrected_report(ls).values())


def test_printed_recursion_misprints_detected():
    failing = set()
    for key in fb.FAMILIES:
        failing |= {k for k, v in fb.recursion_report(_family(*key)).items() if v}
    assert failing  # the printed forms of some relations fail


def test_local_residual_rejects_large_z():
    with pytest.raises(ValueError):
        fb.local_residual(_family("pole", 1), 0.5)
