"""Exact arithmetic in Q, Q(sqrt 5) and the integer lattices Z+tau Z,
zeta Z + eta Z and Z[1/2].

Rationals are :class:`fractions.Fraction`; an element of Q(sqrt 5) is a
frozen pair ``(a, b)`` standing for ``a + b*sqrt(5)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import NotInLattice

Rat = Fraction

__all__ = [
    "Rat",
    "QuadExt",
    "GoldenInt",
    "CatLatticeElem",
    "DyadicRat",
    "TAU",
    "LAMBDA_S",
    "LAMBDA_U",
    "ZETA",
    "ETA",
    "quad_arith",
    "quad_sign",
    "quad_to_lattice",
    "stable_scale",
    "encode_quad",
    "encode_lattice",
    "approx",
]


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True, slots=True)
class QuadExt:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _rat(self.a))
        object.__setattr__(self, "b", _rat(self.b))

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (GoldenInt, CatLatticeElem, DyadicRat)):
            return x.to_quad()
        return cls(_rat(x), Fraction(0))

    @classmethod
    def golden(cls, m, n) -> "QuadExt":
        """``m + n*tau``."""
        m, n = _rat(m), _rat(n)
        return cls(m + n / 2, n / 2)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b)

    def __pos__(self) -> "QuadExt":
        return self

    def __abs__(self) -> "QuadExt":
        return -self if quad_sign(self) < 0 else self

    def __mul__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            # a^2 = 5 b^2 has no rational solution except zero
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        return QuadExt(self.a / n, -self.b / n)

    def __truediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "QuadExt":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = QuadExt(1)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other) -> bool:
        return quad_sign(self - other) < 0

    def __le__(self, other) -> bool:
        return quad_sign(self - other) <= 0

    def __gt__(self, other) -> bool:
        return quad_sign(self - other) > 0

    def __ge__(self, other) -> bool:
        return quad_sign(self - other) >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5 ** 0.5

    def is_rational(self) -> bool:
        return self.b == 0

    def golden_coords(self) -> tuple[Fraction, Fraction]:
        """Rational (m, n) with self = m + n*tau."""
        return self.a - self.b, 2 * self.b

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt5"


def quad_sign(x: QuadExt) -> int:
    """Exact sign of ``a + b*sqrt(5)`` using integer comparisons only."""
    x = QuadExt.coerce(x)
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if sa >= 0 and sb >= 0:
        return 1 if (sa or sb) else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: compare a^2 with 5 b^2 on a common denominator
    lhs = x.a.numerator ** 2 * x.b.denominator ** 2
    rhs = 5 * x.b.numerator ** 2 * x.a.denominator ** 2
    # equality is impossible because sqrt 5 is irrational
    return sa if lhs > rhs else sb


def quad_arith(x, y, op: str) -> QuadExt:
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


TAU = QuadExt(Fraction(1, 2), Fraction(1, 2))
LAMBDA_S = QuadExt(Fraction(3, 2), Fraction(-1, 2))
LAMBDA_U = QuadExt(Fraction(3, 2), Fraction(1, 2))
ZETA = QuadExt(Fraction(1, 2), Fraction(-1, 10))
ETA = QuadExt(Fraction(0), Fraction(1, 5))


@dataclass(frozen=True, slots=True)
class GoldenInt:
    """``m + n*tau``."""

    m: int
    n: int

    def to_quad(self) -> QuadExt:
        return QuadExt.golden(self.m, self.n)

    def __add__(self, other: "GoldenInt") -> "GoldenInt":
        return GoldenInt(self.m + other.m, self.n + other.n)

    def __str__(self) -> str:
        return f"{self.m} + {self.n}*tau"


@dataclass(frozen=True, slots=True)
class CatLatticeElem:
    """``n*zeta + m*eta`` with zeta = 1/2 - sqrt5/10 and eta = sqrt5/5."""

    n: int
    m: int

    def to_quad(self) -> QuadExt:
        return self.n * ZETA + self.m * ETA

    def __add__(self, other: "CatLatticeElem") -> "CatLatticeElem":
        return CatLatticeElem(self.n + other.n, self.m + other.m)

    def __str__(self) -> str:
        return f"{self.n}*zeta + {self.m}*eta"


@dataclass(frozen=True, slots=True)
class DyadicRat:
    """``p / 2**k`` kept with p odd or k = 0."""

    p: int
    k: int = 0

    def __post_init__(self) -> None:
        p, k = int(self.p), int(self.k)
        if k < 0:
            p, k = p * 2 ** (-k), 0
        if p == 0:
            k = 0
        while k > 0 and p % 2 == 0:
            p //= 2
            k -= 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_fraction(cls, q) -> "DyadicRat":
        q = _rat(q)
        den = q.denominator
        k = den.bit_length() - 1
        if den != 1 << k:
            raise NotInLattice(f"{q} is not a dyadic rational")
        return cls(q.numerator, k)

    def to_fraction(self) -> Fraction:
        return Fraction(self.p, 1 << self.k)

    def to_quad(self) -> QuadExt:
        return QuadExt(self.to_fraction())

    def __add__(self, other: "DyadicRat") -> "DyadicRat":
        k = max(self.k, other.k)
        return DyadicRat(self.p * 2 ** (k - self.k) + other.p * 2 ** (k - other.k), k)

    def __lt__(self, other: "DyadicRat") -> bool:
        return self.to_fraction() < other.to_fraction()

    def __le__(self, other: "DyadicRat") -> bool:
        return self.to_fraction() <= other.to_fraction()

    def __str__(self) -> str:
        return f"{self.p}/2^{self.k}"


LatticeElem = Union[GoldenInt, CatLatticeElem, DyadicRat]


def _as_int(q: Fraction, what: str, x: QuadExt) -> int:
    if q.denominator != 1:
        raise NotInLattice(f"{x} is not in the {what} lattice")
    return q.numerator


def quad_to_lattice(x, basis: str) -> LatticeElem:
    """Integer coordinates of x in the requested lattice.

    ``basis`` is ``golden`` (m + n*tau), ``cat`` (n*zeta + m*eta) or
    ``dyadic`` (p/2^k, rational x only).
    """
    x = QuadExt.coerce(x)
    if basis == "golden":
        return GoldenInt(_as_int(x.a - x.b, basis, x), _as_int(2 * x.b, basis, x))
    if basis in ("cat", "zeta-eta"):
        return CatLatticeElem(_as_int(2 * x.a, "cat", x), _as_int(5 * x.b + x.a, "cat", x))
    if basis == "dyadic":
        if x.b != 0:
            raise NotInLattice(f"{x} is irrational")
        return DyadicRat.from_fraction(x.a)
    raise ValueError(f"unknown basis {basis!r}")


def stable_scale(x: CatLatticeElem) -> CatLatticeElem:
    """lambda_s * x, using lambda_s*zeta = 2 zeta - eta and lambda_s*eta = eta - zeta."""
    return CatLatticeElem(2 * x.n - x.m, x.m - x.n)


# serialisation ------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_quad(x) -> dict:
    x = QuadExt.coerce(x)
    return {"a": _frac_str(x.a), "b": _frac_str(x.b)}


def decode_quad(d: dict) -> QuadExt:
    return QuadExt(Fraction(d["a"]), Fraction(d["b"]))


def encode_lattice(x: LatticeElem) -> dict:
    if isinstance(x, GoldenInt):
        return {"basis": "golden", "coeffs": [str(x.m), str(x.n)]}
    if isinstance(x, CatLatticeElem):
        return {"basis": "zeta-eta", "coeffs": [str(x.n), str(x.m)]}
    if isinstance(x, DyadicRat):
        return {"basis": "dyadic", "coeffs": [str(x.p), str(x.k)]}
    raise TypeError(f"not a lattice element: {x!r}")


def approx(x, digits: int = 20) -> str:
    """Decimal string with ``digits`` significant digits."""
    x = QuadExt.coerce(x)
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = Decimal(x.a.numerator) / Decimal(x.a.denominator)
        val += Decimal(x.b.numerator) / Decimal(x.b.denominator) * Decimal(5).sqrt()
        ctx.prec = digits
        return str(+val)
