"""Cyclotomic polynomials, Euler phi, Moebius mu and cyclotomic Lucas values."""

from __future__ import annotations

import math
from functools import lru_cache

from .arith import factorize
from .errors import WrongClass
from .polyring import IntPoly, remainder_power_exact
from .recurrence import LinRec, term_exact


def _prime_factors(n: int) -> dict[int, int]:
    factors, rest = factorize(n, trial_bound=max(10**6, math.isqrt(n) + 1))
    assert rest == 1
    return factors


def euler_phi(M: int) -> int:
    if M < 1:
        raise ValueError("M must be positive")
    result = M
    for q in _prime_factors(M):
        result = result // q * (q - 1)
    return result


def moebius(M: int) -> int:
    if M < 1:
        raise ValueError("M must be positive")
    factors = _prime_factors(M)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(M: int) -> list[int]:
    small = [k for k in range(1, math.isqrt(M) + 1) if M % k == 0]
    return sorted(set(small + [M // k for k in small]))


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> IntPoly:
    """Phi_M, obtained by dividing x^M - 1 exactly by Phi_e for each proper divisor e."""
    if M < 1:
        raise ValueError("M must be positive")
    f = IntPoly.monomial(M) - 1
    for e in divisors(M)[:-1]:
        q, r = f.divrem_monic(cyclotomic_poly(e))
        assert r.degree < 0, "cyclotomic division left a remainder"
        f = q
    return f


def cyclo_lucas(M: int, n: int) -> int:
    """Sum of the n-th powers of the primitive M-th roots of unity.

    With g = gcd(n, M) this is phi(M)/phi(M/g) * mu(M/g); n = 0 gives phi(M).
    """
    if M < 2 or n < 0:
        raise ValueError("need M >= 2 and n >= 0")
    g = math.gcd(n, M)  # gcd(0, M) = M covers n = 0
    return euler_phi(M) // euler_phi(M // g) * moebius(M // g)


def check_periodicity(M: int, rec: LinRec, n: int) -> bool:
    """U_n == U_{n mod M} for a sequence of class Phi_M."""
    if rec.charpoly != cyclotomic_poly(M):
        raise WrongClass(f"sequence is not of class Phi_{M}")
    return term_exact(rec, n) == term_exact(rec, n % M)


def residue_rule_table(M: int) -> dict[int, IntPoly]:
    """r -> R_r(x) for 0 <= r < M coprime to M.

    For a prime p == r (mod M), U_p = R_r{U_0} for every sequence of class Phi_M.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    C = cyclotomic_poly(M)
    if C.degree < 2:
        raise ValueError(f"Phi_{M} has degree {C.degree}; no recurrence of order >= 2")
    return {r: remainder_power_exact(C, r) for r in range(M) if math.gcd(r, M) == 1}
