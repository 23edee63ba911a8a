"""Ramanujan's tau function and the congruences of its prime-power recurrence.

tau(n) is the coefficient of q^n in q * prod_{n>=1} (1 - q^n)^24. The product
is built as the 8th power of Jacobi's cube series

    prod (1 - q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2},

with three exact squarings. Series products use Kronecker substitution:
coefficients are packed into one big integer, multiplied, and unpacked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factorize, is_prime, legendre, mod_pow, primes_in_range
from .errors import CapExceeded, EvenPrime, InternalInconsistency, RamifiedPrime
from .polyring import IntPoly
from .recurrence import LinRec, term_mod

TAU_CAP = 10**5


def _pack(coeffs: list[int], width: int) -> int:
    nbytes = width // 8
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _unpack(x: int, width: int, count: int) -> list[int]:
    nbytes = width // 8
    raw = x.to_bytes(nbytes * count, "little")
    return [int.from_bytes(raw[i : i + nbytes], "little") for i in range(0, len(raw), nbytes)]


def _mul_nonneg(a: list[int], b: list[int], n: int) -> list[int]:
    if not a or not b:
        return [0] * n
    bound = max(max(a), 1) * max(max(b), 1) * min(len(a), len(b))
    width = -(-(bound.bit_length() + 1) // 8) * 8
    prod = _pack(a, width) * _pack(b, width)
    full = _unpack(prod, width, len(a) + len(b) - 1)
    return (full + [0] * n)[:n]


def series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of a*b for integer series a, b (any signs)."""
    a, b = a[:n], b[:n]
    ap, an = [max(c, 0) for c in a], [max(-c, 0) for c in a]
    bp, bn = [max(c, 0) for c in b], [max(-c, 0) for c in b]
    pp = _mul_nonneg(ap, bp, n)
    nn = _mul_nonneg(an, bn, n)
    pn = _mul_nonneg(ap, bn, n)
    np_ = _mul_nonneg(an, bp, n)
    return [w + x - y - z for w, x, y, z in zip(pp, nn, pn, np_)]


def jacobi_cube_series(n: int) -> list[int]:
    """First n coefficients of prod (1 - q^k)^3."""
    out = [0] * n
    k = 0
    while (e := k * (k + 1) // 2) < n:
        out[e] = (-1) ** k * (2 * k + 1)
        k += 1
    return out


@dataclass(frozen=True)
class TauTable:
    """tau(1), ..., tau(N); index with ``table[n]`` for 1 <= n <= N."""

    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"tau({n}) outside table of size {len(self.values)}")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


def tau_table(N: int, cap: int = TAU_CAP) -> TauTable:
    if N > cap:
        raise CapExceeded(f"series order {N} exceeds cap {cap}")
    if N < 1:
        return TauTable(())
    s = jacobi_cube_series(N)
    for _ in range(3):
        s = series_mul(s, s, N)
    # q * prod(1 - q^n)^24: tau(n) is coefficient n-1 of the product
    return TauTable(tuple(s))


_cache: TauTable = TauTable(())


def tau(n: int) -> int:
    """tau(n), from a lazily grown shared table."""
    global _cache
    if n > len(_cache):
        _cache = tau_table(max(2 * n, 256))
    return _cache[n]


def delta_l(l: int) -> int:
    """tau(l)^2 - 4 l^11, the discriminant of x^2 - tau(l) x + l^11."""
    value = tau(l) ** 2 - 4 * l**11
    if value >= 0:
        raise InternalInconsistency(f"Delta({l}) = {value} is not negative")
    return value


def tau_recurrence(l: int) -> LinRec:
    """n -> tau(l^n): class x^2 - tau(l) x + l^11, initials (1, tau(l))."""
    t = tau(l)
    return LinRec(IntPoly([l**11, -t, 1]), (1, t))


def tau_prime_power_mod(l: int, n: int, m: int) -> int:
    return term_mod(tau_recurrence(l), n, m)


def check_tau_prime_congruence(l: int, p: int) -> bool:
    """tau(l^p) == tau(l) when (Delta(l)/p) = 1, and == 0 when it is -1 (mod p)."""
    if p % 2 == 0:
        raise EvenPrime("p must be odd")
    d = delta_l(l)
    symbol = legendre(d, p)
    if symbol == 0:
        raise RamifiedPrime(f"{p} divides Delta({l}) = {d}")
    value = tau_prime_power_mod(l, p, p)
    expected = tau(l) % p if symbol == 1 else 0
    return value == expected


def check_mod_l11(l: int, n: int) -> bool:
    """tau(l^n) == tau(l)^n (mod l^11)."""
    if n > 64:
        raise CapExceeded("n limited to 64")
    m = l**11
    return tau_prime_power_mod(l, n, m) == mod_pow(tau(l), n, m)


def format_factorization(n: int, trial_bound: int = 10**6) -> str:
    """'2^6 * 7 * 17'; an unsplit cofactor is tagged 'c', a large probable prime 'prp'."""
    factors, rest = factorize(n, trial_bound)
    parts = [f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(factors.items())]
    if rest > 1:
        parts.append(f"{rest}[prp]" if is_prime(rest) else f"{rest}[c]")
    return " * ".join(parts) if parts else "1"


def delta_table(lmax: int, pmax: int = 0) -> list[dict]:
    """One row per prime l <= lmax: tau(l), Delta(l), factorization of -Delta(l).

    ``squarefree_primes`` lists the primes dividing -Delta(l) exactly once. With
    ``pmax`` set, also runs the tau(l^p) congruence for every odd p <= pmax
    prime to Delta(l) and records how many passed.
    """
    rows = []
    for l in primes_in_range(2, lmax + 1):
        d = delta_l(l)
        factors, rest = factorize(-d)
        row = {
            "l": l,
            "tau": tau(l),
            "delta": d,
            "minus_delta_factored": format_factorization(-d),
            "squarefree_primes": " ".join(str(q) for q, e in sorted(factors.items()) if e == 1),
            "delta_mod_l": d % l,
        }
        if pmax:
            checked = failed = 0
            for p in primes_in_range(3, pmax + 1):
                if d % p == 0:
                    continue
                checked += 1
                failed += not check_tau_prime_congruence(l, p)
            row["congruence_checked"] = checked
            row["congruence_failed"] = failed
        rows.append(row)
    return rows
