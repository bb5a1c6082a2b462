"""Exact rational interval arithmetic.

Endpoints are `fractions.Fraction`, so every enclosure is rigorous: no
directed-rounding bookkeeping is needed because nothing is ever rounded.
Used for real embeddings of cubic ring elements (where the only irrational
input is a cube root, enclosed by integer root extraction) and for the
density computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def icbrt(n: int) -> int:
    """Floor of the real cube root of a non-negative integer."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    if n == 0:
        return 0
    x = 1 << (-(-n.bit_length() // 3))  # upper start: 2^ceil(bits/3) >= n^(1/3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(value) -> "RatInterval":
        q = Fraction(value)
        return RatInterval(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        o = _coerce(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _coerce(other).reciprocal()

    def contains(self, value) -> bool:
        q = Fraction(value)
        return self.lo <= q <= self.hi

    def overlaps(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def compare(self, value):
        """-1, 0 or +1 if the interval lies below / straddles / lies above value."""
        q = Fraction(value)
        if self.hi < q:
            return -1
        if self.lo > q:
            return 1
        return 0

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self):
        return f"RatInterval({self.lo}, {self.hi})"


def _coerce(x) -> RatInterval:
    if isinstance(x, RatInterval):
        return x
    return RatInterval.exact(x)


def cbrt_interval(n: int, precision_bits: int) -> RatInterval:
    """Enclosure of n**(1/3) (n >= 0) with width at most 2**-precision_bits."""
    k = precision_bits + 2
    r = icbrt(n << (3 * k))
    scale = Fraction(1, 1 << k)
    if r * r * r == n << (3 * k):
        return RatInterval(r * scale, r * scale)
    return RatInterval(r * scale, (r + 1) * scale)
