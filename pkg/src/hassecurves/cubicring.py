"""Exact arithmetic in the order Z[pi] of the pure cubic field Q(P^(1/3)).

Elements are integer coefficient triples (a, b, c) standing for
a + b*pi + c*pi**2 with the single reduction relation pi**3 = P.  All
arithmetic is exact; real embeddings are returned as rational enclosures
so that comparisons like "is this unit > 1" are decided rigorously.

The base parameters (p, P) always satisfy P in {p, 2p} and P != +-1 mod 9,
which makes Z[pi] the maximal order of the field; the arithmetic itself
never relies on maximality, so the same code serves the equation order
Z[P^(1/3)] for arbitrary non-cube P (used by the unit-conjecture scan).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .intervals import RatInterval, cbrt_interval
from .errors import HasseCurvesError

PREFER_P = "prefer_p"
PREFER_2P = "prefer_2p"


@dataclass(frozen=True)
class FieldParams:
    """The pair (p, P) fixing the ring Z[pi], pi = P^(1/3), plus iota.

    iota is 0 until the units module classifies it from the fundamental
    unit's coefficients mod p; afterwards it is 1 or 2.
    """

    p: int
    P: int
    iota: int = 0

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError(f"p = {self.p} must be an odd prime")
        if self.P not in (self.p, 2 * self.p):
            raise ValueError(f"P = {self.P} must be p or 2p")
        if self.P % 9 in (1, 8):
            raise ValueError(f"P = {self.P} is +-1 mod 9; Z[P^(1/3)] would not be maximal")
        if self.iota not in (0, 1, 2):
            raise ValueError(f"iota = {self.iota} out of range")

    def with_iota(self, iota: int) -> "FieldParams":
        return replace(self, iota=iota)

    @property
    def P_iota(self) -> int:
        if self.iota not in (1, 2):
            raise HasseCurvesError("iota not classified yet")
        return self.P**self.iota


@dataclass(frozen=True)
class RingElement:
    """a + b*pi + c*pi**2 with arbitrary-precision integer coefficients."""

    a: int
    b: int
    c: int

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __neg__(self):
        return RingElement(-self.a, -self.b, -self.c)

    def reduce(self, modulus: int) -> "RingElement":
        return RingElement(self.a % modulus, self.b % modulus, self.c % modulus)


ONE = RingElement(1, 0, 0)


def make_field_params(p: int, preference: str = PREFER_P) -> FieldParams:
    """Pick P in {p, 2p} with P != +-1 mod 9, honouring the preference.

    At least one of the two always qualifies: if p = +-1 mod 9 then
    2p = +-2 mod 9.
    """
    if preference not in (PREFER_P, PREFER_2P):
        raise ValueError(f"unknown preference {preference!r}")
    candidates = [p, 2 * p] if preference == PREFER_P else [2 * p, p]
    for P in candidates:
        if P % 9 not in (1, 8):
            return FieldParams(p=p, P=P)
    raise AssertionError("unreachable: one of p, 2p always avoids +-1 mod 9")


def mul(x: RingElement, y: RingElement, params: FieldParams | int) -> RingElement:
    """Product under pi**3 = P, exact coefficients."""
    P = params.P if isinstance(params, FieldParams) else params
    a = x.a * y.a + P * (x.b * y.c + x.c * y.b)
    b = x.a * y.b + x.b * y.a + P * x.c * y.c
    c = x.a * y.c + x.b * y.b + x.c * y.a
    return RingElement(a, b, c)


def norm(x: RingElement, params: FieldParams | int) -> int:
    """Field norm a**3 + P*b**3 + P**2*c**3 - 3*P*a*b*c."""
    P = params.P if isinstance(params, FieldParams) else params
    a, b, c = x.a, x.b, x.c
    return a**3 + P * b**3 + P * P * c**3 - 3 * P * a * b * c


def power(
    x: RingElement,
    k: int,
    params: FieldParams | int,
    modulus: int | None = None,
) -> RingElement:
    """x**k by repeated squaring; k >= 0.

    With a modulus, coefficients are reduced into [0, modulus) after every
    multiplication, which is a ring homomorphism coefficientwise.
    """
    if k < 0:
        raise ValueError("negative exponents need an explicit unit inverse")
    result = ONE
    base = x if modulus is None else x.reduce(modulus)
    while k:
        if k & 1:
            result = mul(result, base, params)
            if modulus is not None:
                result = result.reduce(modulus)
        k >>= 1
        if k:
            base = mul(base, base, params)
            if modulus is not None:
                base = base.reduce(modulus)
    return result


def unit_inverse(x: RingElement, params: FieldParams | int) -> RingElement:
    """Inverse of a unit (norm +-1), via the adjugate triple.

    For n = norm(x): x * adj(x) = n, with
    adj(x) = (a^2 - P b c, P c^2 - a b, b^2 - a c).
    """
    P = params.P if isinstance(params, FieldParams) else params
    n = norm(x, P)
    if n not in (1, -1):
        raise ValueError(f"not a unit: norm = {n}")
    adj = RingElement(x.a * x.a - P * x.b * x.c, P * x.c * x.c - x.a * x.b, x.b * x.b - x.a * x.c)
    return adj if n == 1 else -adj


def real_value(
    x: RingElement,
    params: FieldParams | int,
    precision_bits: int = 64,
) -> RatInterval:
    """Rational enclosure of the real embedding a + b*P^(1/3) + c*P^(2/3).

    The returned width is at most 2**-precision_bits * max(1, |value|).
    """
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    P = params.P if isinstance(params, FieldParams) else params
    bits = precision_bits + 8
    while True:
        pi1 = cbrt_interval(P, bits)
        pi2 = cbrt_interval(P * P, bits)  # tighter than squaring the pi enclosure
        enc = RatInterval.exact(x.a) + x.b * pi1 + x.c * pi2
        bound = max(Fraction(1), abs(enc.lo), abs(enc.hi))
        if enc.width * (1 << precision_bits) <= bound:
            return enc
        bits *= 2


def compare_real(x: RingElement, threshold, params: FieldParams | int) -> int:
    """Sign of (real embedding of x) - threshold, decided exactly.

    Equality only happens for rational elements (b = c = 0), since
    1, P^(1/3), P^(2/3) are linearly independent over Q for non-cube P.
    """
    q = Fraction(threshold)
    if x.b == 0 and x.c == 0:
        return (x.a > q) - (x.a < q)
    bits = 64
    while True:
        enc = real_value(x, params, bits)
        sign = (enc - q).compare(0)
        if sign != 0:
            return sign
        bits *= 2
