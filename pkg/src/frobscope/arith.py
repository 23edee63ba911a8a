"""Modular arithmetic, primality and prime enumeration.

Residues are plain Python ints in ``[0, modulus)``. Moduli are restricted to
``2 <= m < 2**62``; exponents are unbounded.
"""

from __future__ import annotations

import math

from .errors import EvenPrime, ModulusRangeError, NotInvertible

MAX_MODULUS = 1 << 62

# Deterministic for every n < 3.3e24 (covers the whole 64-bit range).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def check_modulus(m: int) -> int:
    if not 2 <= m < MAX_MODULUS:
        raise ModulusRangeError(f"modulus {m} outside [2, 2**62)")
    return m


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set.

    Exact for all n below 3.3e24, which includes every 64-bit integer. Above
    that bound the answer is a strong probable-prime verdict.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_proven_prime(n: int) -> bool:
    """True when ``is_prime(n)`` holds and the witness set is known to be exact for n."""
    return n < _MR_DETERMINISTIC_BOUND and is_prime(n)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    check_modulus(modulus)
    if exponent < 0:
        raise ValueError("negative exponent")
    return pow(base % modulus, exponent, modulus)


def mod_inv(a: int, modulus: int) -> int:
    check_modulus(modulus)
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {modulus}")
    return pow(a, -1, modulus)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; p must be an odd prime."""
    if p % 2 == 0:
        raise EvenPrime(f"Legendre symbol needs an odd prime, got {p}")
    check_modulus(p)
    a %= p
    if a == 0:
        return 0
    return 1 if mod_pow(a, (p - 1) // 2, p) == 1 else -1


def _sieve(n: int) -> bytearray:
    """flags[k] == 1 iff k is prime, for k < max(n, 2)."""
    n = max(n, 2)
    flags = bytearray([1]) * n
    flags[0] = flags[1] = 0
    for q in range(2, math.isqrt(n - 1) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, n, q)))
    return flags


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in ``[lo, hi)``, ascending (segmented sieve)."""
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    lo = max(lo, 2)
    if hi <= lo:
        return []
    base = _sieve(math.isqrt(hi - 1) + 1)
    seg = bytearray([1]) * (hi - lo)
    for q in range(2, len(base)):
        if not base[q]:
            continue
        start = max(q * q, (lo + q - 1) // q * q)
        if start >= hi:
            continue
        seg[start - lo :: q] = bytes(len(range(start, hi, q)))
    return [lo + i for i, flag in enumerate(seg) if flag]


def factorize(n: int, trial_bound: int = 10**6) -> tuple[dict[int, int], int]:
    """Trial-divide |n| up to ``trial_bound``.

    Returns ``(factors, cofactor)``: the prime powers found and the unfactored
    remainder (1 when fully factored; a prime or an unsplit composite otherwise).
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    factors: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    q = 5
    step = 2
    while q <= trial_bound and q * q <= n:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1 and q * q > n:
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n
