"""Exact rational scalars, certified interval enclosures and q-Pochhammer primitives.

Every finite quantity in this package is a `fractions.Fraction`; quantities
defined by infinite sums or products are carried as `Enclosure` intervals
whose rational endpoints provably bracket the real value.  Floating point
never enters a computation; it appears only when the CLI renders decimals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


@dataclass(frozen=True)
class QParam:
    """Base parameter of the polynomial family: a rational q with 0 < q < 1."""

    q: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", Fraction(self.q))
        if not 0 < self.q < 1:
            raise ValueError(f"q must satisfy 0 < q < 1, got {self.q}")

    @classmethod
    def parse(cls, text: str) -> "QParam":
        return cls(Fraction(text))

    def pow(self, k: int) -> Fraction:
        """q**k, valid for negative k as well."""
        return self.q**k

    def __str__(self) -> str:
        return f"{self.q.numerator}/{self.q.denominator}"


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] of exact rationals certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, x) -> "Enclosure":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @staticmethod
    def _coerce(value) -> "Enclosure":
        if isinstance(value, Enclosure):
            return value
        return Enclosure.point(value)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other) -> "Enclosure":
        o = self._coerce(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Enclosure":
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"division by enclosure containing zero: {o}")
        return self * Enclosure(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other) / self

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def enclosure_arith(x: Enclosure, y: Enclosure, op: str) -> Enclosure:
    """Outward interval arithmetic on exact rationals; `op` is one of '+-*/'."""
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def q_pochhammer(a, q: QParam, n: int) -> Fraction:
    """Finite product prod_{k=1..n} (1 - a*q^(k-1)); n = 0 is the empty product 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        out *= 1 - a * power
        power *= q.q
    return out


def q_pochhammer_inf(
    a,
    q: QParam,
    tol: Fraction = Fraction(1, 10**30),
    terms: int | None = None,
    max_terms: int = 200_000,
) -> Enclosure:
    """Certified enclosure of the infinite product prod_{k>=1} (1 - a*q^(k-1)).

    Requires 0 <= a < 1, so every factor lies in (0, 1].  After truncating at
    J factors the omitted ones multiply to something in [1 - a*q^J/(1-q), 1]
    (the union bound on sum_{k>J} a*q^(k-1)), which gives the two-sided
    certificate.  With `terms` set, exactly that many factors are used;
    otherwise J grows until the enclosure width is at most `tol`.
    """
    a = Fraction(a)
    if not 0 <= a < 1:
        raise ValueError(f"need 0 <= a < 1 for a certified positive product, got {a}")
    if a == 0:
        return Enclosure.point(1)
    qq = q.q

    def enclose(partial: Fraction, power: Fraction) -> Enclosure:
        remainder = a * power / (1 - qq)
        lo = partial * max(Fraction(0), 1 - remainder)
        return Enclosure(lo, partial)

    partial = Fraction(1)
    power = Fraction(1)
    if terms is not None:
        if terms < 0:
            raise ValueError("terms must be nonnegative")
        for _ in range(terms):
            partial *= 1 - a * power
            power *= qq
        return enclose(partial, power)

    done = 0
    while True:
        for _ in range(16):
            partial *= 1 - a * power
            power *= qq
        done += 16
        enc = enclose(partial, power)
        if enc.width <= tol or done >= max_terms:
            return enc
