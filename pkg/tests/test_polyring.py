import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from frobscope.errors import CapExceeded, NonMonicDivisor
from frobscope.polyring import (
    IntPoly,
    ModPoly,
    bareiss_det,
    charpoly,
    discriminant,
    divrem_monic,
    lucas_apply,
    remainder_power,
    remainder_power_exact,
    resultant,
)
from frobscope.recurrence import LinRec
from oracles import random_monic, step_terms

FIB = IntPoly([-1, -1, 1])
PHI12 = IntPoly([1, 0, -1, 0, 1])

coeff = st.integers(-20, 20)
monic_polys = st.integers(2, 7).flatmap(lambda d: st.lists(coeff, min_size=d, max_size=d)).map(lambda c: IntPoly(c + [1]))


def test_intpoly_basics():
    x = IntPoly.x()
    f = x**2 - x - 1
    assert f == FIB
    assert f.degree == 2 and IntPoly([]).degree == -1
    assert str(IntPoly([3, -7, 0, 0, 0, 0, 0, 1])) == "x^7 - 7*x + 3"
    assert f(3) == 5
    assert f.derivative() == IntPoly([-1, 2])
    assert IntPoly([0, 0, 0]) == IntPoly([])
    assert hash(IntPoly([1, 2, 0])) == hash(IntPoly([1, 2]))


@given(st.lists(coeff, max_size=8), st.lists(coeff, max_size=8), st.integers(-5, 5))
def test_intpoly_ring_ops_match_evaluation(a, b, x):
    f, g = IntPoly(a), IntPoly(b)
    assert (f + g)(x) == f(x) + g(x)
    assert (f - g)(x) == f(x) - g(x)
    assert (f * g)(x) == f(x) * g(x)


def test_divrem_examples():
    m = 100
    g = FIB.mod(m)
    assert divrem_monic(g, g) == (ModPoly([1], m), ModPoly([], m))
    q, r = divrem_monic(IntPoly.monomial(2).mod(m), g)
    assert r == ModPoly([1, 1], m)
    f = IntPoly([4, 5]).mod(m)
    assert divrem_monic(f, g) == (ModPoly([], m), f)


def test_divrem_non_monic():
    with pytest.raises(NonMonicDivisor):
        divrem_monic(IntPoly([1, 2, 3]).mod(7), IntPoly([1, 2]).mod(7))


@given(st.lists(coeff, max_size=12), monic_polys, st.integers(2, 10**6))
def test_divrem_identity(f_coeffs, g, m):
    f = IntPoly(f_coeffs).mod(m)
    q, r = divrem_monic(f, g.mod(m))
    assert r.degree < g.degree
    assert q * g.mod(m) + r == f


@pytest.mark.parametrize("C", [FIB, PHI12, IntPoly([3, -7, 0, 0, 0, 0, 0, 1])])
def test_remainder_power_below_degree(C):
    assert remainder_power(C, 1, 97) == ModPoly([0, 1], 97)
    assert remainder_power_exact(C, 1) == IntPoly.x()


def test_remainder_power_examples():
    assert remainder_power(FIB, 7, 7) == ModPoly([1, 6], 7)
    for m in (5, 97, 2**61 - 1):
        assert remainder_power(PHI12, 7, m) == ModPoly([0, m - 1], m)
    assert remainder_power_exact(PHI12, 5) == IntPoly([0, -1, 0, 1])
    assert remainder_power_exact(FIB, 7) == IntPoly([8, 13])


def test_remainder_power_exact_matches_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(3)
    for _ in range(20):
        C = random_monic(rng, rng.randint(2, 6))
        n = rng.randint(0, 60)
        expected = sympy.Poly(sympy.rem(x**n, sympy.Poly(list(reversed(C.coeffs)), x)), x).all_coeffs()[::-1]
        assert remainder_power_exact(C, n) == IntPoly([int(c) for c in expected])


def test_remainder_power_exact_cap():
    with pytest.raises(CapExceeded):
        remainder_power_exact(FIB, 10_001)


def test_remainder_power_huge_index():
    # 1879 splits x^7 - 7x + 3, so x^(1879^7) == x^1879 == x modulo (C, 1879)
    C = IntPoly([3, -7, 0, 0, 0, 0, 0, 1])
    assert remainder_power(C, 1879**7, 1879) == ModPoly([0, 1], 1879)


def test_remainder_power_modular_matches_exact():
    rng = random.Random(11)
    for _ in range(40):
        C = random_monic(rng, rng.randint(2, 7))
        m = rng.randint(2, 10**9)
        exact = [remainder_power_exact(C, n) for n in range(501)]
        for n in range(0, 501, 7):
            assert remainder_power(C, n, m) == exact[n].mod(m)


def test_remainder_sequence_recurrence():
    rng = random.Random(12)
    for _ in range(20):
        C = random_monic(rng, rng.randint(2, 7))
        d = C.degree
        R = [remainder_power_exact(C, n) for n in range(200 + d + 1)]
        for n in range(201):
            total = R[n + d]
            for k in range(d):
                total = total + C[k] * R[n + k]
            assert total == IntPoly([])


@pytest.mark.parametrize("C, expected", [(FIB, 5), (IntPoly([-1, -1, 0, 1]), -23)])
def test_discriminant_examples(C, expected):
    assert discriminant(C) == expected


@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))
def test_discriminant_depressed_cubic(u, v):
    assert discriminant(IntPoly([v, u, 0, 1])) == -4 * u**3 - 27 * v**2


def test_discriminant_matches_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(5)
    for _ in range(30):
        C = random_monic(rng, rng.randint(2, 8))
        assert discriminant(C) == sympy.discriminant(sympy.Poly(list(reversed(C.coeffs)), x))


def test_resultant_is_norm():
    # for monic f, Res(f, g) = det g(companion(f)), the product of g over the roots of f
    rng = random.Random(6)
    for _ in range(20):
        f = random_monic(rng, rng.randint(1, 5))
        g = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 5))] + [rng.randint(1, 5)])
        n = f.degree
        comp = sympy.zeros(n, n)
        for i in range(1, n):
            comp[i, i - 1] = 1
        for i in range(n):
            comp[i, n - 1] = -f[i]
        g_of_comp = sum((c * comp**k for k, c in enumerate(g.coeffs)), sympy.zeros(n, n))
        assert resultant(f, g) == g_of_comp.det()


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_and_charpoly_match_sympy(M):
    assert bareiss_det(M) == sympy.Matrix(M).det()
    t = sympy.Symbol("t")
    expected = sympy.Matrix(M).charpoly(t).all_coeffs()[::-1]
    assert charpoly(M) == IntPoly([int(c) for c in expected])


def test_lucas_apply_examples():
    U = (5, 9)
    assert lucas_apply(IntPoly.x().coeffs, U) == 9
    fib = step_terms(FIB, (0, 1), 10)
    assert lucas_apply(IntPoly([8, 13]).coeffs, fib) == 13 == fib[7]
    s = 4
    assert lucas_apply(IntPoly([s, -1]).coeffs, U) == s * 5 - 9


@given(monic_polys, st.data())
def test_congruence_to_equality(C, data):
    d = C.degree
    initials = data.draw(st.lists(st.integers(-50, 50), min_size=d, max_size=d))
    F = IntPoly(data.draw(st.lists(coeff, max_size=51)))
    terms = step_terms(C.coeffs, initials, max(F.degree + 1, d))
    _, R = F.divrem_monic(C)
    assert lucas_apply(F.coeffs, terms) == lucas_apply(R.coeffs, terms)


def test_json_round_trip():
    f = IntPoly([3, -7, 0, 0, 0, 0, 0, 10**30])
    assert f.to_json() == ["3", "-7", "0", "0", "0", "0", "0", str(10**30)]
    assert IntPoly.from_json(f.to_json()) == f
    g = f.mod(1879)
    assert ModPoly([int(c) for c in g.to_json()], 1879) == g
