"""Local series of the linear system for (mu_+, mu_-, nu) at a pole or zero of q.

Around t0, with z = t - t0 and q = z^l sum a_n z^n (l = -1 at a pole, l = 1 at
a zero), the three equations

    3 g mu_+' - g' mu_+ + g nu = 0
    3 g mu_-' + g' mu_- - g nu = 0
    3 g nu'  - 2 g^2 mu_- + 2 u mu_+ = 0

are expanded with mu_+ = z^{m+} sum K_n z^n, mu_- = z^{m-} sum M_n z^n and
nu = z^{mnu} sum S_n z^n.  Matching powers gives a linear system for the
coefficients that is triangular up to the resonances; it is solved here in
exact rational arithmetic, so free constants show up as an exact null space.

All PII data (t0, free coefficients, u0) are converted to Fractions; pass
decimal strings or Fractions for exact input.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction as Fr

import numpy as np
import sympy as sp

THIRD = Fr(1, 3)

# (kind, family) -> exponents (m+, m-, mnu) and the coefficients taken as free
FAMILIES = {
    ("pole", 1): ((Fr(4, 3), Fr(4, 3), Fr(1, 3)), ("M0",)),
    ("pole", 2): ((Fr(1, 3), Fr(1, 3), Fr(-2, 3)), ("M0", "M1")),
    ("pole", 3): ((Fr(-2, 3), Fr(1, 3), Fr(-2, 3)), ("M0", "M1", "K0")),
    ("zero", 1): ((Fr(4, 3), Fr(4, 3), Fr(1, 3)), ("K0",)),
    ("zero", 2): ((Fr(1, 3), Fr(1, 3), Fr(-2, 3)), ("K0", "K1")),
    ("zero", 3): ((Fr(1, 3), Fr(-2, 3), Fr(-2, 3)), ("M0", "K0", "K1")),
}
EXPONENT_SET = {Fr(4, 3), Fr(1, 3), Fr(-2, 3)}
_SERIES = "KMS"
# internal depth beyond the requested order; guards against edge effects
_PAD = 6


class StructuralError(ValueError):
    """Free constants inconsistent with the resonance structure."""


def _fr(x):
    if isinstance(x, Fr):
        return x
    if isinstance(x, (int, np.integer)):
        return Fr(int(x))
    return Fr(str(x))


def _conv(a, b, n=None):
    n = min(len(a), len(b)) if n is None else n
    return [sum((a[i] * b[k - i] for i in range(k + 1)), Fr(0)) for k in range(n)]


def pii_laurent_pole(t0, eps, a3_free, N):
    """Coefficients a_n of q = z^{-1} sum_{n<N} a_n z^n at a simple pole.

    a_0 = eps, a_1 = 0, a_2 = -eps t0/6, a_3 = -eps/4, a_4 = a3_free (the
    z^3 coefficient, left free by the resonance), the rest by matching PII.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if not 1 <= N <= 24:
        raise ValueError("N must be in [1, 24]")
    t0, e = _fr(t0), Fr(eps)
    a = [Fr(0)] * N
    a[0] = e
    for n in range(1, N):
        ap = a[:n] + [Fr(0)]
        # z^{n-3}: (n-1)(n-2) a_n = 2 (q^3)_n + t0 a_{n-2} + a_{n-3}
        rest = (2 * _conv(_conv(ap, ap), ap)[n] + (t0 * a[n - 2] if n >= 2 else 0)
                + (a[n - 3] if n >= 3 else 0))
        if n == 4:
            if rest != 0:
                raise StructuralError("resonance condition at z^1 violated")
            a[4] = _fr(a3_free)
            continue
        a[n] = rest / ((n - 1) * (n - 2) - 6)
    return a


def pii_taylor_zero(t0, a0, N):
    """Coefficients a_n of q = z sum_{n<N} a_n z^n at a simple zero, q'(t0) = a0."""
    if not 1 <= N <= 24:
        raise ValueError("N must be in [1, 24]")
    t0 = _fr(t0)
    c = [Fr(0)] * (N + 1)  # Taylor coefficients of q itself
    c[1] = _fr(a0)
    for k in range(N - 1):
        cube = _conv(_conv(c, c, k + 1), c, k + 1)[k]
        c[k + 2] = (2 * cube + t0 * c[k] + (c[k - 1] if k >= 1 else 0)) / ((k + 2) * (k + 1))
    return c[1:N + 1]


def g_series(a):
    """g = q^2 = z^{2l} sum g_n z^n."""
    return _conv(a, a)


def u_series(g, l, u0):
    """(e, c): u = z^e sum c_k z^k from u' = -g, u(t0) regular part u0."""
    u0 = _fr(u0)
    if l == -1:
        c = [Fr(0)] * len(g)
        for n, gn in enumerate(g):
            if n == 1:
                c[1] = u0
                if gn != 0:
                    raise StructuralError("g_1 != 0 would force a logarithm in u")
            else:
                c[n] = -gn / (n - 1)
        return -1, c
    if l == 1:
        c = [u0, Fr(0), Fr(0)] + [-g[n] / (n + 3) for n in range(len(g) - 3)]
        return 0, c[: len(g)]
    raise ValueError("l must be -1 or 1")


def hamiltonian_u0(a, t0):
    """Regular part of u = q'^2 - t q^2 - q^4 at a pole (a from pii_laurent_pole)."""
    t0 = _fr(t0)
    n = len(a)
    # work with Q = z q (a plain power series); q' z^2 = z Q' - Q
    Q = list(a)
    zq = [Fr(0)] + [k * Q[k] for k in range(1, n)]
    qp2 = [x - y for x, y in zip(zq, Q)]  # z^2 q'
    P = _conv(qp2, qp2)  # z^4 q'^2
    Q2 = _conv(Q, Q)  # z^2 q^2
    Q4 = _conv(Q2, Q2)  # z^4 q^4
    # constant term: z^0 of q'^2 - (t0 + z) q^2 - q^4
    return P[4] - t0 * Q2[2] - Q2[1] - Q4[4]


@dataclass(frozen=True)
class LocalSeries:
    center: float
    kind: str
    family: int
    exponents: tuple
    K: list
    M: list
    S: list
    free: dict
    a: list = field(repr=False)
    u0: Fr = Fr(0)
    t0: Fr = Fr(0)
    pii: dict = field(default_factory=dict)

    @property
    def l(self):
        return -1 if self.kind == "pole" else 1

    @property
    def N(self):
        return len(self.K)


def _terms(l, g, u, exps):
    """Equation terms as (coef exponent, coef list, series index, deriv, factor)."""
    gp = [(2 * l + n) * gn for n, gn in enumerate(g)]
    g2 = _conv(g, g)
    ue, uc = u
    return [
        [(2 * l, g, 0, 1, 3), (2 * l - 1, gp, 0, 0, -1), (2 * l, g, 2, 0, 1)],
        [(2 * l, g, 1, 1, 3), (2 * l - 1, gp, 1, 0, 1), (2 * l, g, 2, 0, -1)],
        [(2 * l, g, 2, 1, 3), (4 * l, g2, 1, 0, -2), (ue, uc, 0, 0, 2)],
    ]


def _system(l, g, u, exps, n_unk):
    """Matrix (rows: matched powers, cols: K_0.., M_0.., S_0..) and row bases."""
    b = min(exps)
    alpha = [int(m - b) for m in exps]
    rows, bases = [], []
    for eq in _terms(l, g, u, exps):
        base = min(ec + alpha[x] - d for ec, _, x, d, _ in eq)
        bases.append(base)
        for p in range(n_unk):
            row = [Fr(0)] * (3 * n_unk)
            for ec, cl, x, d, fac in eq:
                for n in range(n_unk):
                    k = base + p - ec - alpha[x] - n + d
                    if 0 <= k < len(cl):
                        w = fac * cl[k]
                        if d:
                            w *= n + exps[x]
                        row[x * n_unk + n] += w
            rows.append(row)
    return rows, bases


def _nullspace(rows):
    M = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    return [[Fr(int(sp.numer(v)), int(sp.denom(v))) for v in vec] for vec in M.nullspace()]


def _rank(vectors, idx):
    if not vectors:
        return 0
    M = sp.Matrix([[sp.Rational(v[i].numerator, v[i].denominator) for i in idx]
                   for v in vectors])
    return M.rank()


def _g_for(kind, t0, data, n):
    if kind == "pole":
        a = pii_laurent_pole(t0, data.get("eps", 1), data.get("a3", 0), n)
        return a, g_series(a), -1
    a = pii_taylor_zero(t0, data.get("a0", 1), n)
    return a, g_series(a), 1


def solution_space(kind, exps, t0, u0, N, pii=None):
    """Null space of the truncated matching system with exponent lower bounds exps.

    Returns (basis vectors, number of independent low-order directions).
    The second number is the count of free constants.
    """
    n_unk = N + _PAD
    a, g, l = _g_for(kind, t0, pii or {}, n_unk + 4)
    if kind == "zero":
        u0 = g[0]
    u = u_series(g, l, u0)
    rows, _ = _system(l, g, u, tuple(_fr(m) for m in exps), n_unk)
    basis = _nullspace(rows)
    low = [x * n_unk + n for x in range(3) for n in range(N)]
    return basis, _rank(basis, low)


def free_constant_count(kind, family, t0=Fr(1, 3), u0=Fr(2, 7), N=10, pii=None):
    return solution_space(kind, FAMILIES[(kind, family)][0], t0, u0, N, pii)[1]


def local_family(kind, family, t0, free, N=10, u0=Fr(0), pii=None):
    """Coefficients K, M, S (N each) of one local family.

    free: dict naming the family's free coefficients, e.g. {"M0": 1, "M1": 0,
    "K0": 0} for the generic pole family.  pii: {"eps", "a3"} for a pole or
    {"a0"} for a zero.  At a zero u0 is forced to g_0.
    """
    if (kind, family) not in FAMILIES:
        raise ValueError(f"unknown family {kind}/{family}")
    exps, names = FAMILIES[(kind, family)]
    if set(free) != set(names):
        raise StructuralError(f"{kind} family {family} takes free constants {names}")
    pii = dict(pii or {})
    n_unk = N + _PAD
    a, g, l = _g_for(kind, t0, pii, n_unk + 4)
    u0 = g[0] if kind == "zero" else _fr(u0)
    u = u_series(g, l, u0)
    rows, _ = _system(l, g, u, exps, n_unk)
    basis = _nullspace(rows)
    sel = [_SERIES.index(nm[0]) * n_unk + int(nm[1:]) for nm in names]
    # solve basis-combination c with the prescribed free constants
    A = sp.Matrix([[sp.Rational(v[i].numerator, v[i].denominator) for v in basis] for i in sel])
    rhs = sp.Matrix([sp.Rational(_fr(free[nm]).numerator, _fr(free[nm]).denominator)
                     for nm in names])
    if A.rank() < len(names):
        raise StructuralError(f"free constants {names} do not parametrize {kind} family {family}")
    c, params = A.gauss_jordan_solve(rhs)
    c = c.subs({p: 0 for p in params})
    coef = [sum((Fr(int(sp.numer(ci)), int(sp.denom(ci))) * v[i]
                 for ci, v in zip(c, basis)), Fr(0)) for i in range(3 * n_unk)]
    # the low block must not depend on the leftover parameters
    for p in params:
        dv = c.diff(p)
        for i in range(3):
            for n in range(N):
                j = i * n_unk + n
                if sum(dv[k] * sp.Rational(basis[k][j].numerator, basis[k][j].denominator)
                       for k in range(len(basis))) != 0:
                    raise StructuralError("low-order coefficients not determined")
    K, M, S = (coef[i * n_unk: i * n_unk + N] for i in range(3))
    return LocalSeries(center=float(t0), kind=kind, family=family, exponents=exps,
                       K=K, M=M, S=S, free={k: _fr(v) for k, v in free.items()},
                       a=a, u0=u0, t0=_fr(t0), pii=pii)


def combine(ls_list, weights):
    """Linear combination of local series sharing kind, center and exponents;
    lower families are re-expressed with the exponents of the first entry."""
    base = ls_list[0]
    b_exps = base.exponents
    out = [[Fr(0)] * base.N for _ in range(3)]
    for ls, w in zip(ls_list, weights):
        w = _fr(w)
        for i, (arr, m0) in enumerate(zip((ls.K, ls.M, ls.S), ls.exponents)):
            shift = int(m0 - b_exps[i])
            if shift < 0:
                raise ValueError("first entry must carry the lowest exponents")
            for n in range(base.N - shift):
                out[i][n + shift] += w * arr[n]
    return LocalSeries(center=base.center, kind=base.kind, family=base.family,
                       exponents=b_exps, K=out[0], M=out[1], S=out[2], free={},
                       a=base.a, u0=base.u0, t0=base.t0, pii=base.pii)


def _eval_series(e, coefs, z, deriv=False):
    """z^e sum c_k z^k (e may be fractional; principal branch) and derivative."""
    zc = complex(z)
    ze = cmath.exp(complex(float(e)) * cmath.log(zc))
    v = d = 0j
    for k, c in enumerate(coefs):
        v += float(c) * zc**k
        d += float(c) * (float(e) + k) * zc ** (k - 1) if (float(e) + k) != 0 else 0
    return (ze * v, ze * d) if deriv else ze * v


def local_residual(ls: LocalSeries, z, extra=12):
    """Residuals of the three equations on the truncated series at z.

    Each residual is divided by |z|^{e_i}, e_i the lowest power occurring in
    equation i, so that it scales like |z|^{order of the first unmatched term}.
    g and u are summed to N + extra terms so that only the truncation of
    (K, M, S) matters.
    """
    if abs(z) > 0.3:
        raise ValueError("|z| must be <= 0.3")
    l = ls.l
    n_pii = ls.N + extra
    a, g, _ = _g_for(ls.kind, ls.t0, ls.pii, n_pii)
    ue, uc = u_series(g, l, ls.u0)
    gv, gd = _eval_series(2 * l, g, z, deriv=True)
    uv = _eval_series(ue, uc, z)
    mp, mpd = _eval_series(ls.exponents[0], ls.K, z, deriv=True)
    mm, mmd = _eval_series(ls.exponents[1], ls.M, z, deriv=True)
    nu, nud = _eval_series(ls.exponents[2], ls.S, z, deriv=True)
    r = (3 * gv * mpd - gd * mp + gv * nu,
         3 * gv * mmd + gd * mm - gv * nu,
         3 * gv * nud - 2 * gv * gv * mm + 2 * uv * mp)
    b = min(ls.exponents)
    alpha = [m - b for m in ls.exponents]
    bases = [min(ec + alpha[x] - d for ec, _, x, d, _ in eq)
             for eq in _terms(l, g, (ue, uc), ls.exponents)]
    return tuple(abs(ri) / abs(z) ** float(b + e) for ri, e in zip(r, bases))


def pii_residual(a, l, t0, z):
    """q'' - 2 q^3 - t q for the truncated local series of q at z."""
    v, d = _eval_series(l, a, z, deriv=True)
    # second derivative term by term
    dd = sum(float(c) * (l + k) * (l + k - 1) * complex(z) ** (l + k - 2)
             for k, c in enumerate(a))
    return dd - 2 * v**3 - (float(t0) + z) * v


def leading_exponents(ls: LocalSeries):
    """Exponent of the first non-zero coefficient of each series."""
    out = []
    for arr, m in zip((ls.K, ls.M, ls.S), ls.exponents):
        k = next((i for i, c in enumerate(arr) if c != 0), None)
        out.append(None if k is None else m + k)
    return tuple(out)


def _recursion_checks(ls: LocalSeries):
    """Printed recursion relations, as callables n -> residual, per family."""
    g = g_series(ls.a)
    g2 = _conv(g, g)
    K, M, S, u0 = ls.K, ls.M, ls.S, ls.u0
    N = ls.N

    def at(arr, i):
        return arr[i] if 0 <= i < len(arr) else Fr(0)

    def ratio(num, den):
        # terms with vanishing numerator are absent even when den = 0
        return Fr(0) if num == 0 else num / den

    def tail_pole(n):
        return 2 * sum((at(g2, n - 4 - j) * M[j] + ratio(at(g, n - 3 - j) * K[j], n - 4 - j)
                        for j in range(n - 3)), Fr(0))

    def tail_zero(n):
        return (2 * sum((ratio(at(g, n - 3 - j) * K[j], n - j) for j in range(n - 2)), Fr(0)),
                2 * sum((at(g2, n - 4 - j) * M[j] for j in range(n - 3)), Fr(0)))

    m = ls.exponents[1]
    checks = {}
    if ls.kind == "pole":
        checks["S_from_M"] = lambda n: S[n] - (3 * (n + m) - 2) * M[n] - sum(
            (g[n - j] * ((n - 2 + 3 * m + 2 * j) * M[j] - S[j]) for j in range(n - 1)), Fr(0))
        if ls.family == 1:
            checks["K_first_order"] = lambda n: 3 * (n + 2) * K[n] + (3 * n + 2) * M[n] + sum(
                (g[n - j] * ((n + 2 + 2 * j) * M[j] - (n - 6 - 4 * j) * K[j]) for j in range(n - 1)), Fr(0))
            checks["M_second_order"] = lambda n: 9 * n * (n + 1) * M[n] - (sum(
                (g[n - j] * (3 * (n - j) * S[j] + (4 - (3 * n + 1) * (n + 2 + 2 * j)) * M[j])
                 for j in range(n - 1)), Fr(0)) - 2 * at(K, n - 3) + tail_pole(n))
        if ls.family == 2:
            checks["K_first_order"] = lambda n: 3 * (n + 1) * K[n] + (3 * n - 1) * M[n] + sum(
                (g[n - j] * ((n - 1 + 2 * j) * M[j] - (n - 3 - 4 * j) * K[j]) for j in range(n - 1)), Fr(0))
            checks["M_second_order"] = lambda n: 9 * n * (n - 1) * M[n] - (sum(
                (g[n - j] * (3 * (n - j) * S[j] + (4 - (3 * n - 2) * (n - 1 + 2 * j)) * M[j])
                 for j in range(n - 1)), Fr(0)) - 2 * at(K, n - 3) + tail_pole(n))
        if ls.family == 3:
            checks["S_from_M_shifted"] = lambda n: S[n] - (3 * n - 1) * M[n] - sum(
                (g[n - j] * ((n + 2 * j - 1) * M[j] - S[j]) for j in range(n)), Fr(0))
            checks["K_first_order"] = lambda n: (3 * (n + 1) * at(K, n + 1) - sum(
                ((n - 4 * j + 1) * g[n + 1 - j] * K[j] - (n + 2 * j - 1) * g[n - j] * M[j]
                 for j in range(n + 1)), Fr(0))) if n + 1 < N else Fr(0)
            checks["S_second_order"] = lambda n: (3 * n - 2) * S[n] - (2 * M[n] + sum(
                (2 * g2[n - j] * M[j] - (3 * j - 2) * g[n - j] * S[j] for j in range(n)), Fr(0))
                - 2 * u0 * at(K, n - 3) + 2 * sum(
                    (ratio(g[n - 2 - j] * K[j], n - 3 - j) for j in range(n - 1)), Fr(0)))
            checks["K0_from_M2"] = lambda n: (K[0] + 3 * (3 * M[2] + g[2] * M[0])) if n == 0 else Fr(0)
            checks["M_second_order"] = lambda n: (9 * n * (n - 1) * M[n] - (sum(
                ((2 * g2[n - j] - (3 * n - 2) * (n + 2 * j - 1) * g[n - j]) * M[j]
                 - 3 * (n - j) * g[n - j] * S[j] for j in range(n)), Fr(0))
                - 2 * u0 * at(K, n - 3) + 2 * sum(
                    (ratio(g[n - 2 - j] * K[j], n - 3 - j) for j in range(n - 1)), Fr(0)))) if n >= 3 else Fr(0)
        return checks
    g0 = g[0]
    if ls.family in (1, 2):
        checks["S_from_K"] = lambda n: g0 * S[n] - g0 * (2 - 3 * (n + m)) * K[n] - sum(
            (g[n - j] * ((2 - 3 * m + n - 4 * j) * K[j] - S[j]) for j in range(n)), Fr(0))
        checks["M_from_K"] = lambda n: g0 * (3 * (n + m) + 2) * M[n] - g0 * (2 - 3 * (n + m)) * K[n] - sum(
            (g[n - j] * ((2 - 3 * m + n - 4 * j) * K[j] - (2 + 3 * m + n + 2 * j) * M[j])
             for j in range(n)), Fr(0))
        checks["K_second_order"] = lambda n: (3 * g0 * (n + m - 1) * (2 - 3 * (n + m)) + 2 * u0) * K[n] - (3 * sum(
            (g[n - j] * ((n - j) * S[j] - (n + m - 1) * (2 - 3 * m + n - 4 * j) * K[j])
             for j in range(n)), Fr(0)) + sum(tail_zero(n)))
        if ls.family == 1:
            checks["K_closed"] = lambda n: 9 * g0 * n * (n + 1) * K[n] + 3 * sum(
                (g[n - j] * ((n - j) * S[j] + (n + THIRD) * (4 * j + 2 - n) * K[j])
                 for j in range(n)), Fr(0)) + sum(tail_zero(n))
        else:
            checks["K_closed"] = lambda n: -9 * g0 * n * (n - 1) * K[n] - (3 * sum(
                (g[n - j] * ((n - j) * S[j] - (n + m - 1) * (2 - 3 * m + n - 4 * j) * K[j])
                 for j in range(n)), Fr(0)) + sum(tail_zero(n)))
        return checks
    checks["S_from_K"] = lambda n: g0 * S[n] - g0 * (1 - 3 * n) * K[n] - sum(
        (g[n - j] * ((1 + n - 4 * j) * K[j] - S[j]) for j in range(n)), Fr(0))
    checks["M_first_order"] = lambda n: (3 * g0 * n * M[n] - sum(
        (g[n - j] * ((1 + n - 4 * j) * K[j] - (n + 2 * j) * M[j]) for j in range(n)), Fr(0))) if n >= 1 else Fr(0)
    checks["K_second_order"] = lambda n: 9 * g0 * n * (n - 1) * K[n] - (sum(
        (g[n - j] * ((3 * n - 2) * (1 + n - 4 * j) * K[j] - 3 * (n - j) * S[j]) for j in range(n)), Fr(0))
        - sum(tail_zero(n)))
    return checks


def recursion_report(ls: LocalSeries):
    """name -> list of n where the printed relation fails (exact arithmetic)."""
    out = {}
    for name, f in _recursion_checks(ls).items():
        out[name] = [n for n in range(ls.N) if f(n) != 0]
    return out


def _corrected_checks(ls: LocalSeries):
    """Re-derived forms of the printed relations that fail (see recursion_report)."""
    g = g_series(ls.a)
    g2 = _conv(g, g)
    K, M, S, u0 = ls.K, ls.M, ls.S, ls.u0

    def at(arr, i):
        return arr[i] if 0 <= i < len(arr) else Fr(0)

    def ratio(num, den):
        return Fr(0) if num == 0 else num / den

    checks = {}
    if ls.kind == "pole" and ls.family in (1, 2):
        # G = (g - 1)/z^2; the printed (g^2) is the square of G, and u0 K_{n-4}
        # belongs with the K terms
        G = g[2:]
        G2 = _conv(G, G)
        lead, shift = ((lambda n: 9 * n * (n + 1)), 2) if ls.family == 1 else ((lambda n: 9 * n * (n - 1)), -1)

        def f(n, lead=lead, shift=shift):
            s1 = sum((g[n - j] * (3 * (n - j) * S[j]
                                  + (4 - (3 * n + shift - 1) * (n + shift + 2 * j)) * M[j])
                      for j in range(n - 1)), Fr(0))
            tail = 2 * sum((at(G2, n - 4 - j) * M[j] + ratio(at(g, n - 3 - j) * K[j], n - 4 - j)
                            for j in range(n - 3)), Fr(0))
            return lead(n) * M[n] - (s1 - 2 * at(K, n - 3) - 2 * u0 * at(K, n - 4) + tail)

        checks["M_second_order"] = f
    elif ls.kind == "pole":
        checks["M_second_order"] = lambda n: (9 * n * (n - 1) * M[n] - (sum(
            ((2 * g2[n - j] - (3 * n - 2) * (n + 2 * j - 1) * g[n - j]) * M[j]
             + 3 * (n - j) * g[n - j] * S[j] for j in range(n)), Fr(0))
            - 2 * u0 * at(K, n - 3) + 2 * sum(
                (ratio(g[n - 2 - j] * K[j], n - 3 - j) for j in range(n - 1)), Fr(0)))) if n >= 3 else Fr(0)
    elif ls.family == 3:
        g0 = g[0]
        checks["M_first_order"] = lambda n: (3 * g0 * n * M[n] - sum(
            (g[n - 1 - j] * (n - 4 * j) * K[j] - g[n - j] * (n + 2 * j) * M[j] for j in range(n)),
            Fr(0))) if n >= 1 else Fr(0)
        checks["K_second_order"] = lambda n: 9 * g0 * n * (n - 1) * K[n] - (sum(
            (g[n - j] * ((3 * n - 2) * (1 + n - 4 * j) * K[j] - 3 * (n - j) * S[j]) for j in range(n)), Fr(0))
            - 2 * sum((ratio(at(g, n - 3 - j) * K[j], n - j) for j in range(n - 2)), Fr(0))
            - 2 * sum((at(g2, n - 3 - j) * M[j] for j in range(n - 2)), Fr(0)))
    return checks


def corrected_report(ls: LocalSeries):
    out = {}
    for name, f in _corrected_checks(ls).items():
        out[name] = [n for n in range(ls.N) if f(n) != 0]
    return out
