"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its runtime; run with
``pytest tests/test_acceptance.py -s`` (the lines are shown without ``-s`` too).
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest

from frobscope.arith import primes_in_range
from frobscope.classify import (
    PERRIN,
    CycleType,
    S3Class,
    chebotarev_scan,
    cycle_type,
    is_totally_split,
    padovan_class_by_quadratic_form,
    padovan_classify,
    perrin_pseudoprime_scan,
    s3_class_from_cycle_type,
    s3_systems,
)
from frobscope.cyclotomic import cyclo_lucas, residue_rule_table
from frobscope.factor import berlekamp, ddf, edf_cz, factor_full, is_irreducible, squarefree_decompose
from frobscope.polyring import IntPoly, ModPoly, discriminant, lucas_apply, remainder_power, remainder_power_exact
from frobscope.recurrence import LinRec, check_lucas_fermat, check_order_f, check_universal, term_mod
from frobscope.tau import check_mod_l11, check_tau_prime_congruence, delta_l, format_factorization
from oracles import random_monic, random_squarefree_monic, step_terms

T = IntPoly([3, -7, 0, 0, 0, 0, 0, 1])
FIB_POLY = IntPoly([-1, -1, 1])
PADOVAN_POLY = IntPoly([-1, -1, 0, 1])


@contextmanager
def criterion(capsys, number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            raise AssertionError(f"took {elapsed:.1f}s, limit {limit}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        budget = f" (limit {limit:g}s)" if limit else ""
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title}  {elapsed:.1f}s{budget}", flush=True)


def test_01_fibonacci_rule(capsys):
    with criterion(capsys, 1, "Fibonacci rule for p < 10^4", 10):
        rng = random.Random(101)
        pairs = [(rng.randint(-100, 100), rng.randint(-100, 100)) for _ in range(20)]
        for p in primes_in_range(2, 10**4):
            R = remainder_power(FIB_POLY, p, p)
            for U0, U1 in pairs:
                got = lucas_apply(R.coeffs, (U0, U1), p)
                assert got == term_mod(LinRec(FIB_POLY, (U0, U1)), p, p)
                if p == 5:
                    assert got == 3 * U0 % 5
                elif p % 5 in (1, 4):
                    assert got == U1 % p
                else:
                    assert got == (U0 - U1) % p


def test_02_split_criterion_vs_factorization(capsys):
    with criterion(capsys, 2, "R_p == x iff all factors linear, 50 random C, p <= 2000", 60):
        rng = random.Random(102)
        primes = primes_in_range(2, 2001)
        for i in range(50):
            C = random_squarefree_monic(rng, rng.randint(2, 7))
            disc = discriminant(C)
            for p in primes:
                if disc % p == 0:
                    continue
                linear = all(g.degree == 1 for g, _ in factor_full(C.mod(p), seed=i).factors)
                assert is_totally_split(C, p, disc) == linear


def test_03_split_primes_of_degree7(capsys):
    with criterion(capsys, 3, "split primes of x^7 - 7x + 3 below 10^4", 30):
        disc = discriminant(T)
        split = [p for p in primes_in_range(2, 10**4) if disc % p and is_totally_split(T, p, disc)]
        assert split == [1879, 5381, 5783, 8819, 8893]


def test_04_factorization_at_1879(capsys):
    with criterion(capsys, 4, "factor_full(x^7 - 7x + 3, 1879)"):
        expected = {ModPoly([c, 1], 1879) for c in (82, 298, 407, 883, 911, 1371, 1685)}
        for seed in range(5):
            result = factor_full(T.mod(1879), seed=seed)
            assert {g for g, _ in result.factors} == expected
            assert all(e == 1 for _, e in result.factors)


def test_05_s3_triple_agreement(capsys):
    with criterion(capsys, 5, "S3 classes of x^3 - x - 1 agree for p <= 10^4", 30):
        for p in primes_in_range(2, 10**4 + 1):
            if p == 23:
                continue
            R = remainder_power(PADOVAN_POLY, p, p)
            hits = s3_systems(-1, -1, -23, R[2], R[1], R[0], p)
            assert len(hits) == 1
            by_type = s3_class_from_cycle_type(cycle_type(PADOVAN_POLY, p))
            assert padovan_classify(p) == padovan_class_by_quadratic_form(p) == by_type == hits[0]


def test_06_chebotarev_densities(capsys):
    with criterion(capsys, 6, "cycle-type densities to 10^5 within 0.02", 300):
        s3 = chebotarev_scan(
            PADOVAN_POLY,
            10**5,
            6,
            {CycleType((1, 1, 1)): 1, CycleType((1, 2)): 3, CycleType((3,)): 2},
        )
        assert set(s3.counts) <= {CycleType((1, 1, 1)), CycleType((1, 2)), CycleType((3,))}
        assert s3.max_deviation() <= 0.02
        psl = chebotarev_scan(
            T,
            10**5,
            168,
            {
                CycleType((1,) * 7): 1,
                CycleType((7,)): 48,
                CycleType((1, 1, 1, 2, 2)): 21,
                CycleType((1, 2, 4)): 42,
                CycleType((1, 3, 3)): 56,
            },
        )
        assert set(psl.counts) <= set(psl.class_sizes)
        assert psl.max_deviation() <= 0.02


def test_07_cyclotomic_tables(capsys):
    with criterion(capsys, 7, "cyclotomic tables for M = 12"):
        assert [cyclo_lucas(12, n) for n in range(12)] == [4, 0, 2, 0, -2, 0, -4, 0, -2, 0, 2, 0]
        assert residue_rule_table(12) == {
            1: IntPoly([0, 1]),
            5: IntPoly([0, -1, 0, 1]),
            7: IntPoly([0, -1]),
            11: IntPoly([0, 1, 0, -1]),
        }


def test_08_perrin_pseudoprimes(capsys):
    with criterion(capsys, 8, "Perrin pseudoprimes to 3*10^5", 120):
        # the scan itself raises if some prime fails to divide its Perrin term
        assert perrin_pseudoprime_scan(3 * 10**5) == [271441]
        assert all(term_mod(PERRIN, p, p) == 0 for p in primes_in_range(2, 2000))


def test_09_tau(capsys):
    with criterion(capsys, 9, "tau discriminants and congruences", 60):
        assert [format_factorization(-delta_l(l)) for l in (2, 3, 5, 7)] == [
            "2^6 * 7 * 17",
            "2^2 * 3^4 * 11 * 181",
            "2^4 * 5^2 * 89 * 4831",
            "2^2 * 3^2 * 7^2 * 19 * 29 * 47 * 167",
        ]
        assert delta_l(2) == -(2**6) * 119
        assert delta_l(23) % 23 == 1
        for l in (2, 3, 5, 7, 11, 13):
            d = delta_l(l)
            for p in primes_in_range(3, 2001):
                if d % p:
                    assert check_tau_prime_congruence(l, p)
        for l in (2, 3, 5, 7):
            for n in range(1, 11):
                assert check_mod_l11(l, n)


def _property_suites():
    rng = random.Random(110)
    corpus = [random_monic(rng, rng.randint(2, 5)) for _ in range(50)]
    primes = primes_in_range(2, 1001)
    # power sums: L_{p^k} == L_1 and the universal Lucas congruence
    for C in corpus:
        for p in primes:
            assert check_lucas_fermat(C, p, 1) and check_lucas_fermat(C, p, 2)
            assert check_universal(C, p)
    # U_{p^f} == U_1 with f the Frobenius order
    for C in corpus[:20]:
        disc = discriminant(C)
        if disc == 0:
            continue
        rec = LinRec(C, tuple(rng.randint(-50, 50) for _ in range(C.degree)))
        for p in primes[:60]:
            if disc % p:
                assert check_order_f(rec, p, cycle_type(C, p, disc).order)
    # F{U} depends only on F mod C
    for C in corpus[:20]:
        U = step_terms(C.coeffs, [rng.randint(-50, 50) for _ in range(C.degree)], 60)
        for _ in range(10):
            F = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(0, 51))])
            _, R = F.divrem_monic(C)
            assert lucas_apply(F.coeffs, U) == lucas_apply(R.coeffs, U)
    # remainder sequence satisfies the recurrence of C
    for C in corpus[:20]:
        d = C.degree
        R = [remainder_power_exact(C, n) for n in range(200 + d + 1)]
        for n in range(201):
            total = R[n + d]
            for k in range(d):
                total = total + C[k] * R[n + k]
            assert total.degree < 0
    # Berlekamp and Cantor-Zassenhaus agree; factorizations reassemble into irreducibles
    odd = primes_in_range(3, 10**4)
    done = 0
    while done < 200:
        p = rng.choice(odd)
        f = ModPoly([rng.randrange(p) for _ in range(rng.randint(2, 9))] + [1], p)
        parts = squarefree_decompose(f)
        if len(parts) == 1 and parts[0][1] == 1:
            cz = {g for k, block in ddf(f) for g in edf_cz(block, k, seed=done)}
            assert set(berlekamp(f, seed=done)) == cz
            done += 1
    every = primes_in_range(2, 10**4)
    for i in range(1000):
        p = rng.choice(every)
        f = ModPoly([rng.randrange(p) for _ in range(rng.randint(1, 10))] + [rng.randrange(1, p)], p)
        result = factor_full(f, seed=i)
        assert result.product() == f
        assert all(is_irreducible(g) for g, _ in result.factors)


def test_10_property_suites(capsys):
    with criterion(capsys, 10, "property suites"):
        _property_suites()
