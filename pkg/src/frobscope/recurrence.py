"""Linear recurrent sequences of class C and their Fermat-type congruences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polyring import (
    IntPoly,
    charpoly,
    discriminant,
    lucas_apply,
    remainder_power,
)
from .errors import CapExceeded, RamifiedPrime

TERM_EXACT_CAP = 10**6


@dataclass(frozen=True)
class LinRec:
    """U_{n+d} = -(c_0 U_n + ... + c_{d-1} U_{n+d-1}) for C = x^d + c_{d-1} x^{d-1} + ... + c_0."""

    charpoly: IntPoly
    initials: tuple[int, ...]

    def __post_init__(self):
        C = self.charpoly
        if not isinstance(C, IntPoly):
            object.__setattr__(self, "charpoly", C := IntPoly(C))
        if C.degree < 2 or not C.is_monic():
            raise ValueError(f"characteristic polynomial must be monic of degree >= 2, got {C}")
        init = tuple(int(u) for u in self.initials)
        if len(init) != C.degree:
            raise ValueError(f"need {C.degree} initial terms, got {len(init)}")
        object.__setattr__(self, "initials", init)

    @property
    def order(self) -> int:
        return self.charpoly.degree

    @classmethod
    def lucas(cls, C: IntPoly) -> LinRec:
        """The power-sum (trace) sequence L_n of the roots of C."""
        return cls(C, tuple(lucas_initials(C)))

    def terms(self, count: int) -> list[int]:
        return _step(self, count - 1) if count > 0 else []

    def combine(self, alpha: int, other: LinRec, beta: int) -> LinRec:
        if other.charpoly != self.charpoly:
            raise ValueError("sequences have different characteristic polynomials")
        return LinRec(self.charpoly, tuple(alpha * a + beta * b for a, b in zip(self.initials, other.initials)))

    def to_json(self) -> dict:
        return {"charpoly": self.charpoly.to_json(), "initials": [str(u) for u in self.initials]}

    @classmethod
    def from_json(cls, data: dict) -> LinRec:
        return cls(IntPoly.from_json(data["charpoly"]), tuple(int(u) for u in data["initials"]))


def _step(rec: LinRec, n: int) -> list[int]:
    c = rec.charpoly.coeffs
    d = rec.order
    seq = list(rec.initials)
    for i in range(n + 1 - d):
        seq.append(-sum(c[k] * seq[i + k] for k in range(d) if c[k]))
    return seq[: n + 1]


def term_exact(rec: LinRec, n: int, cap: int = TERM_EXACT_CAP) -> int:
    if n < 0:
        raise ValueError("negative index")
    if n > cap:
        raise CapExceeded(f"index {n} exceeds step cap {cap}")
    if n < rec.order:
        return rec.initials[n]
    c = rec.charpoly.coeffs
    d = rec.order
    window = list(rec.initials)
    for _ in range(n - d + 1):
        nxt = -sum(c[k] * window[k] for k in range(d) if c[k])
        window = window[1:] + [nxt]
    return window[-1]


def term_mod(rec: LinRec, n: int, m: int) -> int:
    """U_n mod m as R_n{U_0}; never steps, so n may be astronomically large."""
    R = remainder_power(rec.charpoly, n, m)
    return lucas_apply(R.coeffs, rec.initials, m)


def lucas_initials(C: IntPoly) -> list[int]:
    """Power sums L_0..L_{d-1} of the roots of C via Newton's identities."""
    d = C.degree
    if d < 2 or not C.is_monic():
        raise ValueError(f"expected a monic polynomial of degree >= 2, got {C}")
    L = [d]
    for k in range(1, d):
        s = -k * C[d - k]
        for i in range(1, k):
            s -= C[d - i] * L[k - i]
        L.append(s)
    return L


def check_lucas_fermat(C: IntPoly, p: int, k: int = 1) -> bool:
    """L_{p^k} == L_1 (mod p); holds for every prime p, ramified or not."""
    L = LinRec.lucas(C)
    return term_mod(L, p**k, p) == L.initials[1] % p


def check_universal(C: IntPoly, p: int) -> bool:
    """sum_k r_k(p) L_k == L_1 (mod p) with R_p = sum_k r_k(p) x^k."""
    L = lucas_initials(C)
    R = remainder_power(C, p, p)
    return lucas_apply(R.coeffs, L, p) == L[1] % p


def check_order_f(rec: LinRec, p: int, f: int) -> bool:
    """U_{p^f} == U_1 (mod p) where f is the order of Frobenius at p."""
    if discriminant(rec.charpoly) % p == 0:
        raise RamifiedPrime(f"{p} divides the discriminant of {rec.charpoly}")
    return term_mod(rec, p**f, p) == rec.initials[1] % p


def matrix_trace_fermat(M: Sequence[Sequence[int]], p: int) -> bool:
    """Tr(M^p) == Tr(M) (mod p), through the Lucas sequence of charpoly(M)."""
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise ValueError("matrix must be square and non-empty")
    if n > 8:
        raise ValueError("matrix size limited to 8")
    trace = sum(M[i][i] for i in range(n))
    return _trace_power_mod(M, p, p) == trace % p


def _trace_power_mod(M: Sequence[Sequence[int]], e: int, m: int) -> int:
    C = charpoly(M)
    if C.degree == 1:
        # 1x1: the single eigenvalue is the entry itself
        return pow(M[0][0], e, m)
    return term_mod(LinRec.lucas(C), e, m)


def arnold_check(M: Sequence[Sequence[int]], p: int, n: int) -> dict[str, bool]:
    """Report which modulus the congruence Tr(M^(p^(n+1))) == Tr(M^(p^n)) satisfies.

    Both candidate moduli p^n and p^(n+1) are evaluated; neither is asserted.
    """
    mod = p ** (n + 1)
    hi = _trace_power_mod(M, p ** (n + 1), mod)
    lo = _trace_power_mod(M, p**n, mod)
    diff = (hi - lo) % mod
    return {f"mod p^{n}": diff % p**n == 0, f"mod p^{n + 1}": diff == 0}
