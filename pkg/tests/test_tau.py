import math
import random

import pytest

from frobscope.arith import primes_in_range
from frobscope.errors import CapExceeded, RamifiedPrime
from frobscope.tau import (
    check_mod_l11,
    check_tau_prime_congruence,
    delta_l,
    delta_table,
    format_factorization,
    series_mul,
    tau,
    tau_prime_power_mod,
    tau_table,
)
from oracles import naive_tau

N = 2000


@pytest.fixture(scope="module")
def table():
    return tau_table(N)


def test_tau_table_matches_naive_product():
    ref = naive_tau(60)
    t = tau_table(60)
    assert [t[n] for n in range(1, 61)] == ref
    assert ref[:7] == [1, -24, 252, -1472, 4830, -6048, -16744]


def test_series_mul_matches_convolution():
    rng = random.Random(61)
    for _ in range(50):
        n = rng.randint(1, 40)
        a = [rng.randint(-10**9, 10**9) for _ in range(rng.randint(0, n))]
        b = [rng.randint(-10**9, 10**9) for _ in range(rng.randint(0, n))]
        ref = [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) for k in range(n)]
        assert series_mul(a, b, n) == ref


def test_multiplicative(table):
    rng = random.Random(62)
    pairs = 0
    while pairs < 50:
        m, n = rng.randint(2, 44), rng.randint(2, 44)
        if math.gcd(m, n) != 1 or m * n > N:
            continue
        assert table[m * n] == table[m] * table[n]
        pairs += 1


def test_hecke_prime_power_relation(table):
    for l in (2, 3, 5, 7):
        k = 1
        while l ** (k + 1) <= N:
            assert table[l ** (k + 1)] == table[l] * table[l**k] - l**11 * table[l ** (k - 1)]
            k += 1


def test_deligne_bound_and_negative_delta(table):
    for l in primes_in_range(2, N + 1):
        assert table[l] ** 2 < 4 * l**11
        assert delta_l(l) < 0


def test_tau_table_cap():
    with pytest.raises(CapExceeded):
        tau_table(10**5 + 1)


@pytest.mark.parametrize(
    "l, factored",
    [
        (2, "2^6 * 7 * 17"),
        (3, "2^2 * 3^4 * 11 * 181"),
        (5, "2^4 * 5^2 * 89 * 4831"),
        (7, "2^2 * 3^2 * 7^2 * 19 * 29 * 47 * 167"),
    ],
)
def test_delta_factorizations(l, factored):
    assert format_factorization(-delta_l(l)) == factored


def test_delta_examples():
    assert delta_l(2) == -7616 == -(2**6) * 119
    assert delta_l(3) == -645084
    assert delta_l(23) % 23 == 1


def test_prime_power_terms(table):
    assert tau_prime_power_mod(2, 0, 97) == 1
    assert tau_prime_power_mod(3, 1, 10**9) == 252
    assert tau_prime_power_mod(2, 2, 10**12) == -1472 % 10**12 and table[4] == -1472
    for l in (2, 3, 5):
        for n in range(6):
            if l**n <= N:
                assert tau_prime_power_mod(l, n, 10**15) == table[l**n] % 10**15


def test_congruence_examples():
    for p in primes_in_range(3, 2001):
        if 7616 % p:
            assert check_tau_prime_congruence(2, p)
    with pytest.raises(RamifiedPrime):
        check_tau_prime_congruence(3, 11)
    with pytest.raises(RamifiedPrime):
        check_tau_prime_congruence(2, 7)


def test_congruence_all_l():
    for l in (2, 3, 5, 7, 11, 13):
        d = delta_l(l)
        for p in primes_in_range(3, 2001):
            if d % p:
                assert check_tau_prime_congruence(l, p)


def test_mod_l11(table):
    assert check_mod_l11(2, 1)
    for l in (2, 3, 5, 7):
        for n in range(1, 11):
            assert check_mod_l11(l, n)
    # exact recurrence values reduced mod l^11
    assert table[32] % 2**11 == (-24) ** 5 % 2**11
    assert table[125] % 5**11 == 4830**3 % 5**11


def test_delta_table_columns():
    rows = delta_table(13, pmax=200)
    assert [r["l"] for r in rows] == [2, 3, 5, 7, 11, 13]
    assert rows[0]["squarefree_primes"] == "7 17"
    assert all(r["congruence_failed"] == 0 and r["congruence_checked"] > 0 for r in rows)


def test_tau_lazy_cache():
    assert tau(1) == 1 and tau(7) == -16744 and tau(300) == tau_table(300)[300]
