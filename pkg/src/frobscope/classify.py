"""Frobenius classification of primes from remainder powers.

Everything here reads the splitting behaviour of a monic integer polynomial C
modulo a prime p off the remainder R_p(x) = x^p mod (C, p):

* the cycle type (factor degrees) from gcds with x^(p^k) - x,
* total splitting as R_p == x,
* the quadratic rule and the three S3 congruence systems for cubics
  x^3 + u x + v, with the Padovan/Perrin specialisation u = v = -1,
* batch scans: Perrin pseudoprimes and Chebotarev density counts.

Primes dividing the discriminant are reported as ramified, never classified.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import factorize, is_prime, legendre, primes_in_range
from .errors import (
    CapExceeded,
    DegenerateQuadratic,
    InternalInconsistency,
    RamifiedPrime,
)
from .polyring import (
    IntPoly,
    discriminant,
    pdivmod,
    pgcd,
    pmod,
    pmul,
    psub,
    remainder_power,
)
from .recurrence import LinRec, term_mod

PADOVAN_POLY = IntPoly([-1, -1, 0, 1])
PERRIN = LinRec(PADOVAN_POLY, (3, 0, 2))
PADOVAN = LinRec(PADOVAN_POLY, (1, 1, 1))
PERRIN_SCAN_MAX = 10**7

X = [0, 1]


# -- cycle types ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class CycleType:
    """Sorted multiset of irreducible factor degrees of C mod p."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    @property
    def order(self) -> int:
        """Order of the Frobenius permutation: lcm of the cycle lengths."""
        return math.lcm(*self.degrees) if self.degrees else 1

    def is_split(self) -> bool:
        return all(k == 1 for k in self.degrees)

    def __str__(self):
        counts: dict[int, int] = {}
        for k in self.degrees:
            counts[k] = counts.get(k, 0) + 1
        return " ".join(f"{k}^{e}" for k, e in sorted(counts.items()))

    @classmethod
    def parse(cls, text: str) -> CycleType:
        """Inverse of ``str``: '1^3 2^2' -> (1, 1, 1, 2, 2)."""
        degrees: list[int] = []
        for part in text.split():
            k, _, e = part.partition("^")
            degrees += [int(k)] * int(e or 1)
        return cls(tuple(degrees))


def _check_unramified(C: IntPoly, p: int, disc: int | None = None) -> None:
    if disc is None:
        disc = discriminant(C)
    if disc % p == 0:
        raise RamifiedPrime(f"{p} divides the discriminant {disc} of {C}")


def _frobenius_degrees(c: list[int], p: int) -> list[int]:
    """Factor degrees of the squarefree monic c over F_p (distinct-degree gcds).

    x^(p^k) mod c is advanced by the linear Frobenius map, whose matrix has
    rows x^(i*p) mod c; each step costs d^2 multiplications.
    """
    d = len(c) - 1
    h = list(remainder_power(IntPoly(c), p, p).coeffs)
    if h == X:
        return [1] * d
    rows = [[1]]
    for _ in range(1, d):
        rows.append(pmod(pmul(rows[-1], h), c, p))
    degrees: list[int] = []
    g = c
    k = 1
    while len(g) - 1 >= 2 * k:
        common = pgcd(psub(h, X, p), g, p)
        if len(common) > 1:
            n_factors, rem = divmod(len(common) - 1, k)
            if rem:
                raise InternalInconsistency(f"degree-{k} block of size {len(common) - 1}")
            degrees += [k] * n_factors
            g, r = pdivmod(g, common, p)
            assert not r
        k += 1
        if len(g) - 1 < 2 * k:
            break
        acc = [0] * d
        for i, coef in enumerate(h):
            if coef:
                for j, y in enumerate(rows[i]):
                    acc[j] += coef * y
        h = [a % p for a in acc]
        while h and h[-1] == 0:
            h.pop()
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return sorted(degrees)


def cycle_type(C: IntPoly, p: int, disc: int | None = None) -> CycleType:
    """Frobenius cycle type of C at the unramified prime p, without factoring."""
    _check_unramified(C, p, disc)
    return CycleType(tuple(_frobenius_degrees([a % p for a in C.coeffs], p)))


def is_totally_split(C: IntPoly, p: int, disc: int | None = None) -> bool:
    """C splits into distinct linear factors mod p iff R_p(x) == x."""
    _check_unramified(C, p, disc)
    return remainder_power(C, p, p).coeffs == (0, 1)


# -- quadratic rule -------------------------------------------------------


class QuadLabel(str, Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"


@dataclass(frozen=True)
class QuadVerdict:
    """Label plus the linear form F with U_p == F{U_0} (mod p) for every sequence.

    Split gives x, Inert gives s - x. At a ramified prime C has a double root
    rho mod p and U_p == rho * U_0, so the form is the constant rho.
    """

    label: QuadLabel
    predicted_form: IntPoly | None


def quad_classify(s: int, pi: int, p: int) -> QuadVerdict:
    """Classify p for C = x^2 - s x + pi."""
    disc = s * s - 4 * pi
    if disc == 0:
        raise DegenerateQuadratic(f"x^2 - {s}x + {pi} has zero discriminant")
    if p == 2:
        # (disc/2) via the factorization of x^2 + s x + pi over F_2
        if s % 2 == 0:
            return QuadVerdict(QuadLabel.RAMIFIED, IntPoly([pi % 2]))
        roots = sum(1 for x in (0, 1) if (x * x - s * x + pi) % 2 == 0)
        symbol = 1 if roots else -1
    else:
        symbol = legendre(disc, p)
    if symbol == 1:
        return QuadVerdict(QuadLabel.SPLIT, IntPoly.x())
    if symbol == -1:
        return QuadVerdict(QuadLabel.INERT, IntPoly([s, -1]))
    rho = s * pow(2, -1, p) % p
    return QuadVerdict(QuadLabel.RAMIFIED, IntPoly([rho]))


# -- S3 cubics ------------------------------------------------------------


class S3Class(str, Enum):
    P1 = "P1"  # identity: three roots mod p
    P2 = "P2"  # transposition: linear times irreducible quadratic
    P3 = "P3"  # 3-cycle: irreducible cubic


_S3_BY_TYPE = {(1, 1, 1): S3Class.P1, (1, 2): S3Class.P2, (3,): S3Class.P3}


def s3_class_from_cycle_type(ct: CycleType) -> S3Class:
    return _S3_BY_TYPE[ct.degrees]


def _integer_roots(u: int, v: int) -> list[int]:
    if v == 0:
        return [0]
    factors, rest = factorize(v)
    if rest != 1:
        raise ValueError(f"cannot factor constant term {v} to test irreducibility")
    divs = [1]
    for q, e in factors.items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return [r for s in (1, -1) for d in divs if (r := s * d) ** 3 + u * r + v == 0]


def _check_s3_cubic(u: int, v: int) -> int:
    disc = -4 * u**3 - 27 * v**2
    if disc == 0 or (disc > 0 and math.isqrt(disc) ** 2 == disc):
        raise ValueError(f"x^3 + {u}x + {v}: discriminant {disc} is a square, group is not S3")
    if _integer_roots(u, v):
        raise ValueError(f"x^3 + {u}x + {v} is reducible over Q")
    return disc


def _s3_coefficients(u: int, v: int, p: int) -> tuple[int, int, int]:
    """(a, b, c) with R_p(x) = a x^2 + b x + c mod p."""
    R = remainder_power(IntPoly([v, u, 0, 1]), p, p)
    return R[2], R[1], R[0]


def s3_systems(u: int, v: int, disc: int, a: int, b: int, c: int, p: int) -> list[S3Class]:
    """Which of the three congruence systems (a, b, c) satisfies, checked P1, P3, P2."""
    hits = []
    if (a % p, b % p, c % p) == (0, 1, 0):
        hits.append(S3Class.P1)
    if (
        (disc * a * a - 9 * u * u) % p == 0
        and (disc * (b * b + b) - (u**3 + 27 * v * v)) % p == 0
        and (disc * c * c - 4 * u**4) % p == 0
    ):
        hits.append(S3Class.P3)
    if (
        (disc * a**3 - 9 * u * u * a - 27 * v) % p == 0
        and (disc * b**3 + 3 * u**3 * b - u**3) % p == 0
        and (disc * c**3 - 4 * u**4 * c - 8 * u**3 * v) % p == 0
    ):
        hits.append(S3Class.P2)
    return hits


def s3_classify(u: int, v: int, p: int) -> S3Class:
    """Frobenius class of p for the S3 cubic x^3 + u x + v from R_p alone."""
    disc = _check_s3_cubic(u, v)
    if disc % p == 0:
        raise RamifiedPrime(f"{p} divides the discriminant {disc}")
    a, b, c = _s3_coefficients(u, v, p)
    if (3 * c - 2 * u * a) % p:
        raise InternalInconsistency(f"3c != 2ua mod {p} for (a, b, c) = ({a}, {b}, {c})")
    hits = s3_systems(u, v, disc, a, b, c, p)
    if len(hits) != 1:
        raise InternalInconsistency(f"p = {p}: congruence systems matched {hits} for (a, b, c) = ({a}, {b}, {c})")
    return hits[0]


def s3_class_partial_via_symbol(u: int, v: int, p: int) -> bool:
    """True (IsP2) iff the discriminant is a non-square mod the odd prime p."""
    disc = _check_s3_cubic(u, v)
    if disc % p == 0:
        raise RamifiedPrime(f"{p} divides the discriminant {disc}")
    return legendre(disc, p) == -1


def _padovan_systems(a: int, b: int, c: int, p: int) -> list[S3Class]:
    hits = []
    if (a % p, b % p, c % p) == (0, 1, 0):
        hits.append(S3Class.P1)
    if (23 * a * a + 9) % p == 0 and (23 * (b * b + b) + 26) % p == 0 and (23 * c * c + 4) % p == 0:
        hits.append(S3Class.P3)
    if (23 * a**3 + 9 * a - 27) % p == 0 and (23 * b**3 + 3 * b - 1) % p == 0 and (23 * c**3 + 4 * c + 8) % p == 0:
        hits.append(S3Class.P2)
    return hits


def padovan_classify(p: int) -> S3Class:
    """Class of p for x^3 - x - 1 via the hard-coded Padovan systems.

    The general S3 classifier is run alongside and must agree.
    """
    if p == 23:
        raise RamifiedPrime("23 divides the discriminant -23")
    a, b, c = _s3_coefficients(-1, -1, p)
    if (3 * c + 2 * a) % p:
        raise InternalInconsistency(f"3c != -2a mod {p}")
    hits = _padovan_systems(a, b, c, p)
    if len(hits) != 1:
        raise InternalInconsistency(f"p = {p}: Padovan systems matched {hits}")
    general = s3_classify(-1, -1, p)
    if general != hits[0]:
        raise InternalInconsistency(f"p = {p}: Padovan systems say {hits[0]}, general systems say {general}")
    return hits[0]


def represented_by_x2_23y2(p: int) -> bool:
    """p = x^2 + 23 y^2 with x >= 0, y >= 1 (exhaustive search over y)."""
    for y in range(1, math.isqrt(p // 23) + 1):
        rest = p - 23 * y * y
        if math.isqrt(rest) ** 2 == rest:
            return True
    return False


def padovan_class_by_quadratic_form(p: int) -> S3Class:
    """Class of p for x^3 - x - 1 from (p/23) and representation by x^2 + 23y^2."""
    if p == 23:
        raise RamifiedPrime("23 divides the discriminant -23")
    symbol = legendre(p, 23)
    if symbol == -1:
        return S3Class.P2
    return S3Class.P1 if represented_by_x2_23y2(p) else S3Class.P3


# -- per-prime verdicts ---------------------------------------------------


@dataclass(frozen=True)
class PrimeVerdict:
    p: int
    ramified: bool
    cycle_type: CycleType | None = None
    split: bool | None = None
    label: str | None = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ramified": self.ramified,
            "cycle_type": str(self.cycle_type) if self.cycle_type else None,
            "split": self.split,
            "label": self.label,
        }


def _label_for(C: IntPoly, p: int) -> str | None:
    if C.degree == 2:
        s, pi = -C[1], C[0]
        disc = s * s - 4 * pi
        if disc < 0 or math.isqrt(disc) ** 2 != disc:
            return quad_classify(s, pi, p).label.value
    elif C.degree == 3 and C[2] == 0:
        try:
            _check_s3_cubic(C[1], C[0])
        except ValueError:
            return None
        return s3_classify(C[1], C[0], p).value
    return None


def classify_prime(C: IntPoly, p: int, disc: int | None = None) -> PrimeVerdict:
    if disc is None:
        disc = discriminant(C)
    if disc % p == 0:
        label = QuadLabel.RAMIFIED.value if C.degree == 2 else None
        return PrimeVerdict(p, True, label=label)
    ct = cycle_type(C, p, disc)
    split = is_totally_split(C, p, disc)
    if split != ct.is_split():
        raise InternalInconsistency(f"p = {p}: R_p test says split={split}, cycle type {ct}")
    return PrimeVerdict(p, False, ct, split, _label_for(C, p))


# -- scans ----------------------------------------------------------------


def _chunks(items: Sequence[int], n: int) -> list[Sequence[int]]:
    if n <= 1 or len(items) < 2:
        return [items]
    size = -(-len(items) // n)
    return [items[i : i + size] for i in range(0, len(items), size)]


def _run_chunks(fn: Callable, args: Iterable[tuple], jobs: int) -> list:
    """Map ``fn`` over argument tuples, preserving order, optionally in processes."""
    args = list(args)
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args)))


def _perrin_chunk(lo: int, hi: int) -> tuple[list[int], list[int]]:
    pseudo, bad_primes = [], []
    for n in range(lo, hi):
        if term_mod(PERRIN, n, n) == 0:
            if not is_prime(n):
                pseudo.append(n)
        elif is_prime(n):
            bad_primes.append(n)
    return pseudo, bad_primes


def perrin_pseudoprime_scan(limit: int, jobs: int = 1) -> list[int]:
    """Composite n <= limit dividing the Perrin term L_n.

    Also confirms p | L_p for every prime p <= limit.
    """
    if limit > PERRIN_SCAN_MAX:
        raise CapExceeded(f"limit {limit} exceeds {PERRIN_SCAN_MAX}")
    if limit < 2:
        return []
    step = -(-(limit - 1) // max(jobs * 4, 1))
    bounds = list(range(2, limit + 1, step)) + [limit + 1]
    pieces = _run_chunks(_perrin_chunk, zip(bounds[:-1], bounds[1:]), jobs)
    pseudo: list[int] = []
    for ps, bad in pieces:
        if bad:
            raise InternalInconsistency(f"primes not dividing their Perrin term: {bad[:5]}")
        pseudo += ps
    return pseudo


@dataclass
class ScanReport:
    poly: IntPoly
    pmax: int
    counts: dict[CycleType, int]
    ramified: list[int]
    group_order: int | None = None
    class_sizes: dict[CycleType, int] | None = None
    split_primes: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def densities(self) -> dict[CycleType, Fraction]:
        return {ct: Fraction(n, self.total) for ct, n in self.counts.items()}

    def expected(self) -> dict[CycleType, Fraction]:
        if not self.class_sizes or not self.group_order:
            return {}
        return {ct: Fraction(n, self.group_order) for ct, n in self.class_sizes.items()}

    def deviations(self) -> dict[CycleType, float]:
        dens = self.densities()
        return {ct: abs(float(dens.get(ct, 0)) - float(e)) for ct, e in self.expected().items()}

    def max_deviation(self) -> float:
        devs = self.deviations()
        return max(devs.values()) if devs else 0.0

    def rows(self) -> list[dict]:
        types = sorted(set(self.counts) | set(self.class_sizes or {}))
        expected = self.expected()
        dens = self.densities()
        out = []
        for ct in types:
            row = {
                "cycle_type": str(ct),
                "count": self.counts.get(ct, 0),
                "density": float(dens.get(ct, 0)),
            }
            if expected:
                row["expected"] = float(expected.get(ct, 0))
                row["deviation"] = abs(row["density"] - row["expected"])
            out.append(row)
        return out

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "pmax": self.pmax,
            "counts": {str(ct): n for ct, n in sorted(self.counts.items())},
            "ramified": self.ramified,
            "group_order": self.group_order,
            "class_sizes": {str(ct): n for ct, n in sorted(self.class_sizes.items())} if self.class_sizes else None,
            "split_primes": self.split_primes,
            "rows": self.rows(),
        }

    @classmethod
    def from_json(cls, data: dict) -> ScanReport:
        sizes = data.get("class_sizes")
        return cls(
            poly=IntPoly.from_json(data["poly"]),
            pmax=int(data["pmax"]),
            counts={CycleType.parse(k): int(n) for k, n in data["counts"].items()},
            ramified=[int(p) for p in data["ramified"]],
            group_order=data.get("group_order"),
            class_sizes={CycleType.parse(k): int(n) for k, n in sizes.items()} if sizes else None,
            split_primes=[int(p) for p in data.get("split_primes", [])],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        rows = self.rows()
        fields = ["cycle_type", "count", "density"] + (["expected", "deviation"] if self.expected() else [])
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()


def _scan_chunk(coeffs: tuple[int, ...], primes: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(_frobenius_degrees([a % p for a in coeffs], p)) for p in primes]


def chebotarev_scan(
    C: IntPoly,
    pmax: int,
    group_order: int | None = None,
    class_sizes: dict[CycleType, int] | None = None,
    jobs: int = 1,
) -> ScanReport:
    """Cycle-type counts over the unramified primes p <= pmax."""
    if pmax < 100:
        raise ValueError("pmax must be at least 100")
    disc = discriminant(C)
    if disc == 0:
        raise ValueError(f"{C} is not squarefree")
    primes = primes_in_range(2, pmax + 1)
    ramified = [p for p in primes if disc % p == 0]
    good = [p for p in primes if disc % p]
    results = _run_chunks(_scan_chunk, ((tuple(C.coeffs), chunk) for chunk in _chunks(good, jobs * 4)), jobs)
    counts: dict[CycleType, int] = {}
    split_primes = []
    flat = [deg for part in results for deg in part]
    for p, degs in zip(good, flat):
        ct = CycleType(degs)
        counts[ct] = counts.get(ct, 0) + 1
        if ct.is_split():
            split_primes.append(p)
    return ScanReport(C, pmax, counts, ramified, group_order, class_sizes, split_primes)
