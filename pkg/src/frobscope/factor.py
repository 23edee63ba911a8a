"""Factorization of polynomials over a prime field F_p.

Pipeline: squarefree decomposition -> distinct-degree factorization ->
equal-degree splitting. The equal-degree step is Cantor-Zassenhaus for odd p
and Berlekamp for p = 2; Berlekamp is also usable on its own for any p.

Randomized steps draw from :class:`~frobscope.rng.SplitMix64`, so a fixed seed
reproduces the exact sequence of trial polynomials and the factor ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .errors import EvenCharacteristic, InternalInconsistency
from .polyring import (
    ModPoly,
    monic,
    pdivmod,
    pderiv,
    pgcd,
    pmod,
    pmul,
    powmod,
    psub,
    reduce,
)
from .rng import SplitMix64

X = [0, 1]

# Berlekamp enumerates every shift s in F_p up to this size, and switches to
# random combinations raised to (p-1)/2 above it.
BERLEKAMP_ENUMERATE_MAX = 1024


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _exact_div(a: list[int], b: list[int], p: int) -> list[int]:
    q, r = pdivmod(a, b, p)
    assert not r, "inexact polynomial division"
    return q


def _pth_root(f: list[int], p: int) -> list[int]:
    # every exponent is a multiple of p; a^(1/p) = a in F_p
    return f[::p]


def _sff(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out: list[tuple[list[int], int]] = []
    df = pderiv(f, p)
    if not df:
        return [(g, e * p) for g, e in _sff(_pth_root(f, p), p)]
    c = pgcd(f, df, p)
    w = _exact_div(f, c, p)
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = _exact_div(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _exact_div(c, y, p)
    if len(c) > 1:
        out.extend((g, e * p) for g, e in _sff(_pth_root(c, p), p))
    return out


def squarefree_decompose(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """f / lc(f) as a product of pairwise coprime monic squarefree parts^exponent."""
    p = f.modulus
    if f.degree < 0:
        raise ValueError("cannot decompose the zero polynomial")
    if f.degree == 0:
        return []
    parts = _sff(monic(list(f.coeffs), p), p)
    return sorted(((ModPoly(g, p), e) for g, e in parts), key=lambda t: t[1])


def _ddf(f: list[int], p: int) -> list[tuple[int, list[int]]]:
    out = []
    g = f
    h = X
    k = 0
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, g, p)
        d = pgcd(psub(h, X, p), g, p)
        if len(d) > 1:
            out.append((k, d))
            g = _exact_div(g, d, p)
            h = pmod(h, g, p)
    if len(g) > 1:
        out.append((len(g) - 1, g))
    return out


def ddf(f: ModPoly) -> list[tuple[int, ModPoly]]:
    """Distinct-degree factorization of a squarefree f.

    Returns ``(k, product of all monic irreducible factors of degree k)`` for
    each k that occurs, in increasing k.
    """
    p = f.modulus
    if f.degree < 1:
        return []
    return [(k, ModPoly(g, p)) for k, g in _ddf(monic(list(f.coeffs), p), p)]


def _random_poly(rng: SplitMix64, below_degree: int, p: int) -> list[int]:
    return reduce([rng.below(p) for _ in range(below_degree)], p)


def _edf_cz(g: list[int], k: int, p: int, rng: SplitMix64) -> list[list[int]]:
    n = len(g) - 1
    if n == k:
        return [g]
    e = (p**k - 1) // 2
    budget = 64 * n
    out: list[list[int]] = []
    stack = [g]
    while stack:
        u = stack.pop()
        du = len(u) - 1
        if du == k:
            out.append(u)
            continue
        while True:
            budget -= 1
            if budget < 0:
                raise InternalInconsistency(f"Cantor-Zassenhaus made no progress on {u} mod {p}")
            r = _random_poly(rng, du, p)
            if len(r) < 2:
                continue
            s = psub(powmod(r, e, u, p), [1], p)
            d = pgcd(s, u, p)
            if 0 < len(d) - 1 < du:
                stack.append(_exact_div(u, d, p))
                stack.append(d)
                break
    return out


def edf_cz(g: ModPoly, k: int, seed: int | SplitMix64 = 0) -> list[ModPoly]:
    """Split a product of distinct irreducibles of degree k (Cantor-Zassenhaus)."""
    p = g.modulus
    if p == 2:
        raise EvenCharacteristic("Cantor-Zassenhaus splitting needs odd p; use berlekamp for p = 2")
    if g.degree % k:
        raise ValueError(f"degree {g.degree} is not a multiple of {k}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    return [ModPoly(u, p) for u in _edf_cz(monic(list(g.coeffs), p), k, p, rng)]


def berlekamp_matrix(f: list[int], p: int) -> list[list[int]]:
    """Rows i = coefficients of x^(p*i) mod f."""
    n = len(f) - 1
    xp = powmod(X, p, f, p)
    rows = []
    cur = [1]
    for _ in range(n):
        rows.append(cur + [0] * (n - len(cur)))
        cur = pmod(pmul(cur, xp), f, p)
    return rows


def nullspace_mod_p(a: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : a v = 0} over F_p."""
    rows = [list(r) for r in a]
    n = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                t = rows[i][col]
                rows[i] = [(x - t * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def _berlekamp(f: list[int], p: int, rng: SplitMix64) -> list[list[int]]:
    n = len(f) - 1
    if n <= 1:
        return [f]
    Q = berlekamp_matrix(f, p)
    # v(x)^p == v(x) mod f  <=>  v (Q - I) = 0  <=>  (Q - I)^T v = 0
    a = [[(Q[i][j] - (1 if i == j else 0)) % p for i in range(n)] for j in range(n)]
    basis = [reduce(v, p) for v in nullspace_mod_p(a, p)]
    r = len(basis)
    if r == 1:
        return [f]
    nonconst = [v for v in basis if len(v) > 1]
    factors = [f]
    if p <= BERLEKAMP_ENUMERATE_MAX:
        for v in nonconst:
            nxt = []
            for u in factors:
                if len(u) == 2:
                    nxt.append(u)
                    continue
                for s in range(p):
                    g = pgcd(u, psub(v, [s], p), p)
                    if len(g) > 1:
                        nxt.append(g)
            factors = nxt
            if len(factors) == r:
                break
    else:
        e = (p - 1) // 2
        budget = 64 * n * r
        while len(factors) < r:
            budget -= 1
            if budget < 0:
                raise InternalInconsistency(f"Berlekamp made no progress on {f} mod {p}")
            acc = [0] * n
            for v in basis:
                c = rng.below(p)
                for i, y in enumerate(v):
                    acc[i] += c * y
            w = reduce(acc, p)
            if len(w) < 2:
                continue
            nxt = []
            for u in factors:
                if len(u) == 2:
                    nxt.append(u)
                    continue
                d = pgcd(psub(powmod(w, e, u, p), [1], p), u, p)
                if 0 < len(d) - 1 < len(u) - 1:
                    nxt.extend([d, _exact_div(u, d, p)])
                else:
                    nxt.append(u)
            factors = nxt
    if len(factors) != r:
        raise InternalInconsistency(f"Berlekamp found {len(factors)} factors, expected {r}")
    return factors


def berlekamp(f: ModPoly, seed: int | SplitMix64 = 0) -> list[ModPoly]:
    """Irreducible factors of a squarefree f (works for every p, including 2)."""
    p = f.modulus
    if f.degree < 1:
        return []
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    return sorted(ModPoly(g, p) for g in _berlekamp(monic(list(f.coeffs), p), p, rng))


def is_irreducible(g: ModPoly) -> bool:
    """x^(p^n) == x mod g and gcd(x^(p^j) - x, g) = 1 for 1 <= j < n, n = deg g."""
    p = g.modulus
    n = g.degree
    if n < 1:
        return False
    f = monic(list(g.coeffs), p)
    h = X
    for j in range(1, n + 1):
        h = powmod(h, p, f, p)
        if j < n and len(pgcd(psub(h, X, p), f, p)) > 1:
            return False
    return pmod(psub(h, X, p), f, p) == []


@dataclass(frozen=True)
class FactorizationResult:
    prime: int
    input: ModPoly
    unit: int
    factors: tuple[tuple[ModPoly, int], ...]

    def product(self) -> ModPoly:
        acc = [self.unit % self.prime] if self.unit % self.prime else []
        for g, e in self.factors:
            for _ in range(e):
                acc = pmul(acc, list(g.coeffs), self.prime)
        return ModPoly(acc, self.prime)

    def degrees(self) -> list[int]:
        """Factor degrees with multiplicity, ascending."""
        return sorted(g.degree for g, e in self.factors for _ in range(e))

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "input": self.input.to_json(),
            "unit": str(self.unit),
            "factors": [{"factor": g.to_json(), "multiplicity": e} for g, e in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> FactorizationResult:
        p = int(data["prime"])
        return cls(
            prime=p,
            input=ModPoly((int(c) for c in data["input"]), p),
            unit=int(data["unit"]),
            factors=tuple((ModPoly((int(c) for c in item["factor"]), p), int(item["multiplicity"])) for item in data["factors"]),
        )


def factor_full(f: ModPoly, seed: int = 0) -> FactorizationResult:
    """Complete factorization of f over F_p, p = f.modulus."""
    p = f.modulus
    _check_prime(p)
    if f.degree <= 0:
        return FactorizationResult(p, f, f[0] if f.degree == 0 else 0, ())
    rng = SplitMix64(seed)
    unit = f.coeffs[-1]
    found: list[tuple[ModPoly, int]] = []
    for part, e in squarefree_decompose(f):
        for k, block in _ddf(list(part.coeffs), p):
            if len(block) - 1 == k:
                pieces = [block]
            elif p == 2:
                pieces = _berlekamp(block, p, rng)
            else:
                pieces = _edf_cz(block, k, p, rng)
            found.extend((ModPoly(g, p), e) for g in pieces)
    found.sort(key=lambda t: (t[0].coeffs, t[1]))
    result = FactorizationResult(p, f, unit, tuple(found))
    if result.product() != f:
        raise InternalInconsistency(f"factors of {f} mod {p} do not multiply back")
    return result
