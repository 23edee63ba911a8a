"""Polynomials over the integers and over Z/m.

Coefficient lists are ascending: ``[a0, a1, ..., an]`` stands for
``a0 + a1 x + ... + an x^n``. Canonical form has no trailing zeros, so the
zero polynomial is the empty list and has degree -1.

Two value types wrap these lists: :class:`IntPoly` (exact, arbitrary precision)
and :class:`ModPoly` (coefficients reduced into ``[0, m)``). The list-level
helpers (``pmul``, ``pdivmod``, ``pgcd``, ...) are the hot paths shared by the
factorization and classification code.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

from .arith import check_modulus
from .errors import CapExceeded, NonMonicDivisor, NotInvertible

REMAINDER_EXACT_CAP = 10_000


# -- list helpers ---------------------------------------------------------


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a: Iterable[int], m: int) -> list[int]:
    return trim([c % m for c in a])


def padd(a: Sequence[int], b: Sequence[int], m: int | None = None) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return reduce(out, m) if m else trim(out)


def psub(a: Sequence[int], b: Sequence[int], m: int | None = None) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return reduce(out, m) if m else trim(out)


def pmul(a: Sequence[int], b: Sequence[int], m: int | None = None) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, m) if m else trim(out)


def pdivmod_monic(f: Sequence[int], g: Sequence[int], m: int | None = None) -> tuple[list[int], list[int]]:
    """Division by a monic ``g``; exact over Z, or over Z/m for any m >= 2."""
    if not g or g[-1] != 1:
        raise NonMonicDivisor("divisor must be monic")
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], (reduce(r, m) if m else trim(r))
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        t = r[i] % m if m else r[i]
        if t:
            q[i - dg] = t
            base = i - dg
            for k in range(dg):
                r[base + k] -= t * g[k]
        r[i] = 0
    if m:
        return reduce(q, m), reduce(r[:dg], m)
    return trim(q), trim(r[:dg])


def monic(a: Sequence[int], p: int) -> list[int]:
    """Scale a nonzero polynomial over F_p to leading coefficient 1."""
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pdivmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Division with remainder over the prime field F_p."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead = g[-1] % p
    if lead == 0:
        raise NotInvertible("leading coefficient vanishes mod p")
    inv = pow(lead, -1, p)
    q, r = pdivmod_monic(f, [c * inv % p for c in g], p)
    return [c * inv % p for c in q], r


def pmod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return pdivmod(f, g, p)[1]


def pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p (empty list when both inputs are zero)."""
    a, b = reduce(a, p), reduce(b, p)
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p) if a else []


def pderiv(a: Sequence[int], m: int | None = None) -> list[int]:
    out = [i * c for i, c in enumerate(a)][1:]
    return reduce(out, m) if m else trim(out)


def peval(a: Sequence[int], x: int, m: int | None = None) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if m:
            acc %= m
    return acc


def mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], m: int) -> list[int]:
    """a*b reduced modulo the monic f and modulo m."""
    return pdivmod_monic(pmul(a, b), f, m)[1]


def powmod(base: Sequence[int], e: int, f: Sequence[int], m: int) -> list[int]:
    """base^e reduced modulo the monic f and modulo m."""
    result = [1] if len(f) > 1 else []
    b = pdivmod_monic(base, f, m)[1]
    while e:
        if e & 1:
            result = mulmod(result, b, f, m)
        e >>= 1
        if e:
            b = mulmod(b, b, f, m)
    return result


# -- value types ----------------------------------------------------------


def _format(coeffs: Sequence[int], var: str = "x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class IntPoly:
    """Polynomial with exact integer coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", tuple(trim([int(c) for c in coeffs])))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> IntPoly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return _format(self.coeffs)

    @staticmethod
    def _lift(other) -> tuple[int, ...] | None:
        if isinstance(other, IntPoly):
            return other.coeffs
        if isinstance(other, int):
            return (other,)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else IntPoly(padd(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else IntPoly(psub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else IntPoly(psub(o, self.coeffs))

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else IntPoly(pmul(self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        return peval(self.coeffs, x)

    def derivative(self) -> IntPoly:
        return IntPoly(pderiv(self.coeffs))

    def compose_power(self, k: int) -> IntPoly:
        """self(x^k)."""
        out = [0] * (k * max(self.degree, 0) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(out)

    def divrem_monic(self, g: IntPoly) -> tuple[IntPoly, IntPoly]:
        q, r = pdivmod_monic(self.coeffs, g.coeffs)
        return IntPoly(q), IntPoly(r)

    def mod(self, m: int) -> ModPoly:
        return ModPoly(self.coeffs, m)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> IntPoly:
        return cls(int(c) for c in data)


class ModPoly:
    """Polynomial over Z/m, coefficients kept in ``[0, m)`` (immutable)."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Iterable[int], modulus: int):
        check_modulus(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(reduce(coeffs, modulus)))

    def __setattr__(self, name, value):
        raise AttributeError("ModPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ModPoly):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("ModPoly", self.modulus, self.coeffs))

    def __lt__(self, other: ModPoly) -> bool:
        return (len(self.coeffs), self.coeffs) < (len(other.coeffs), other.coeffs)

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, {self.modulus})"

    def __str__(self):
        return _format(self.coeffs)

    def _check(self, other: ModPoly) -> None:
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")

    def __add__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(padd(self.coeffs, other.coeffs), self.modulus)

    def __sub__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(psub(self.coeffs, other.coeffs), self.modulus)

    def __mul__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(pmul(self.coeffs, other.coeffs), self.modulus)

    def __call__(self, x: int) -> int:
        return peval(self.coeffs, x, self.modulus)

    def lift(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def signed(self) -> IntPoly:
        """Lift with symmetric representatives in (-m/2, m/2]."""
        m = self.modulus
        return IntPoly(c - m if c > m // 2 else c for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


# -- operations -----------------------------------------------------------


def divrem_monic(f: ModPoly, g: ModPoly) -> tuple[ModPoly, ModPoly]:
    if f.modulus != g.modulus:
        raise ValueError("moduli differ")
    if g.degree < 1 or not g.is_monic():
        raise NonMonicDivisor(f"divisor {g} is not monic of degree >= 1")
    q, r = pdivmod_monic(f.coeffs, g.coeffs, f.modulus)
    return ModPoly(q, f.modulus), ModPoly(r, f.modulus)


def _require_charpoly(C: IntPoly) -> None:
    if C.degree < 2 or not C.is_monic():
        raise ValueError(f"expected a monic polynomial of degree >= 2, got {C}")


def _xpow_mod(c: Sequence[int], n: int, m: int) -> list[int]:
    """x^n mod (c, m) by left-to-right square-and-multiply; c monic."""
    d = len(c) - 1
    red = [(-a) % m for a in c[:d]]  # x^d == sum red[k] x^k
    r = [1]
    for bit in bin(n)[2:]:
        if len(r) > 1:
            sq = [0] * (2 * len(r) - 1)
            for i, x in enumerate(r):
                if x:
                    sq[2 * i] += x * x
                    x2 = 2 * x
                    for j in range(i + 1, len(r)):
                        sq[i + j] += x2 * r[j]
            for i in range(len(sq) - 1, d - 1, -1):
                t = sq[i] % m
                if t:
                    base = i - d
                    for k in range(d):
                        sq[base + k] += t * red[k]
            r = [v % m for v in sq[:d]]
        else:
            r = [r[0] * r[0] % m] if r else []
        if bit == "1":
            r = [0] + r
            if len(r) > d:
                t = r.pop()
                if t:
                    for k in range(d):
                        r[k] = (r[k] + t * red[k]) % m
    return trim(r)


def remainder_power(C: IntPoly, n: int, m: int) -> ModPoly:
    """x^n reduced modulo (C, m): the remainder R_n of x^n by C, taken mod m."""
    _require_charpoly(C)
    check_modulus(m)
    if n < 0:
        raise ValueError("negative exponent")
    return ModPoly(_xpow_mod([a % m for a in C.coeffs], n, m), m)


def remainder_power_exact(C: IntPoly, n: int, cap: int = REMAINDER_EXACT_CAP) -> IntPoly:
    """Exact integer remainder of x^n by C, by stepping r -> x*r mod C."""
    _require_charpoly(C)
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds remainder cap {cap}")
    d = C.degree
    c = C.coeffs
    if n < d:
        return IntPoly.monomial(n)
    r = [0] * (d - 1) + [1]  # x^(d-1)
    for _ in range(n - d + 1):
        top = r[-1]
        r = [0] + r[:-1]
        if top:
            for k in range(d):
                r[k] -= top * c[k]
    return IntPoly(r)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def sylvester(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    if f.degree < 0 or g.degree < 0:
        return 0
    if f.degree == 0 and g.degree == 0:
        return 1
    return bareiss_det(sylvester(f.coeffs, g.coeffs))


def discriminant(C: IntPoly) -> int:
    """Discriminant of a monic C: (-1)^(d(d-1)/2) Res(C, C')."""
    _require_charpoly(C)
    d = C.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(C, C.derivative())


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPoly:
    """Characteristic polynomial det(t*I - M) of a square integer matrix.

    The determinant is evaluated exactly (Bareiss) at t = 0..n and the monic
    degree-n polynomial is recovered by Newton interpolation.
    """
    n = len(matrix)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        shifted = [[(t if i == j else 0) - matrix[i][j] for j in range(n)] for i in range(n)]
        ys.append(bareiss_det(shifted))
    # divided differences
    coef = [Fraction(y) for y in ys]
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)]
    for i in range(n, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= xs[i] * poly[k]
        shifted[0] += coef[i]
        poly = shifted
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic polynomial")
        out.append(int(c))
    return IntPoly(out)


def lucas_apply(
    F: Iterable[int],
    U: Sequence[int] | Callable[[int], int],
    modulus: int | None = None,
) -> int:
    """Replace each x^k of F by U_k and sum; reduce mod ``modulus`` if given."""
    get = U if callable(U) else U.__getitem__
    total = 0
    for k, f in enumerate(F):
        if f:
            total += f * get(k)
    return total % modulus if modulus else total
