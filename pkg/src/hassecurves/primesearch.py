"""Primality testing and bounded searches for primes of two cubic shapes.

The curve construction needs primes of the form P^iota * b**3 + c**3 = 2
(mod 3) attached to quadratic factors, and "descent primes"
l = a**3 + P^(2*iota) * c**3 = 2 (mod 3) whose powers sit on the right-hand
side of the Fermat-type equation.  Heath-Brown/Moroz guarantees infinitely
many primes of such binary cubic shapes; here we realize bounded, fully
deterministic searches over a fixed spiral so that runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .cubicring import FieldParams
from .errors import SearchExhausted

# Deterministic Miller-Rabin witnesses; this set is known to be exact for
# every n below 3.3 * 10**24, far beyond 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_BOUND = 1 << 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong_prp(n: int) -> bool:
    """Strong Lucas probable prime test with Selfridge parameters."""
    # find D = 5, -7, 9, -11, ... with jacobi(D, n) == -1
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d = n + 1
    r = (d & -d).bit_length() - 1
    d >>= r
    # Lucas sequence by binary ladder on U, V
    U, V, Qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (U + V) % n, (V + D * U) % n
            if U & 1:
                U += n
            if V & 1:
                V += n
            U, V = U // 2 % n, V // 2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(r - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 2**64.

    Above that bound this is a Baillie-style combination (base-2 strong
    probable prime plus strong Lucas); primality_kind reports the
    distinction for result records.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < DETERMINISTIC_BOUND:
        return all(_miller_rabin(n, a) for a in _MR_WITNESSES if a < n)
    if not _miller_rabin(n, 2):
        return False
    s = math.isqrt(n)
    if s * s == n:
        return False
    return _lucas_strong_prp(n)


def primality_kind(n: int) -> str:
    if not is_prime(n):
        return "composite"
    return "prime" if n < DETERMINISTIC_BOUND else "probable_prime"


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, limit + 1, i))
    return [i for i in range(limit + 1) if flags[i]]


def spiral(radius: int) -> Iterator[tuple[int, int]]:
    """Deterministic spiral over Z^2 by Chebyshev rings.

    Ring r lists the four axis points (r,0), (0,r), (-r,0), (0,-r) first,
    then the remaining ring points in descending lexicographic order, so
    the sequence starts (0,0), (1,0), (0,1), (-1,0), (0,-1), (1,1), ...
    """
    yield (0, 0)
    for r in range(1, radius + 1):
        axis = ((r, 0), (0, r), (-r, 0), (0, -r))
        yield from axis
        for x in range(r, -r - 1, -1):
            ys = range(r, -r - 1, -1) if abs(x) == r else (r, -r)
            for y in ys:
                if (x, y) not in axis:
                    yield (x, y)


@dataclass(frozen=True)
class FormPrime:
    """Coefficient pair (b, c) with q = P^iota * b**3 + c**3 prime."""

    b: int
    c: int
    q: int
    template: str = ""


@dataclass(frozen=True)
class DescentCandidate:
    """Pair (a, c) with l = a**3 + P^(2*iota) * c**3 prime (middle coefficient 0)."""

    a: int
    c: int
    l: int


TEMPLATE_PAPER = "paper"
TEMPLATE_SECTION5 = "section5"


def pair_templates(
    params: FieldParams, template_mode: str = TEMPLATE_PAPER
) -> list[tuple[str, Callable[[int, int], tuple[int, int]]]]:
    """Binary-cubic generating templates for coefficient pairs (b_j, c_j).

    Every template value is automatically = 2 (mod 3) when positive; the
    congruence is still re-checked on outputs rather than assumed.
    """
    p, P = params.p, params.P
    iota = params.iota
    if iota not in (1, 2):
        raise ValueError("iota must be classified before searching")
    if template_mode == TEMPLATE_SECTION5 and P == 7:
        # simplified degree-7 demonstration template
        return [("f", lambda X, Y: (3 * X + 1, 3 * Y + 1))]
    if p == 3:
        return [
            ("f+", lambda X, Y: (P * X + 1, P * Y - 1)),
            ("f-", lambda X, Y: (P * X - 1, P * Y - 1)),
        ]
    if iota == 1:
        s = 1 if P % 3 == 1 else -1
        return [
            ("f", lambda X, Y: (3 * P * X + s, 3 * P * Y + 1)),
            ("g", lambda X, Y: (3 * P * X - s, 3 * P * Y + 3)),
        ]
    return [
        ("f", lambda X, Y: (3 * P * X + 1, 3 * P * Y + 1)),
        ("g", lambda X, Y: (3 * P * X - 1, 3 * P * Y + 3)),
    ]


def form_value(params: FieldParams, b: int, c: int) -> int:
    return params.P_iota * b**3 + c**3


def search_coefficient_pairs(
    params: FieldParams,
    count: int,
    radius: int = 64,
    template_mode: str = TEMPLATE_PAPER,
) -> list[FormPrime]:
    """First `count` coefficient-pair primes, smallest prime value first.

    Enumerates the deterministic spiral out to `radius` (values of the
    binary cubic can be small arbitrarily far out, so a fixed budget is the
    only way to keep "the smallest few" well-defined and reproducible),
    keeps pairs whose form value is a positive prime = 2 (mod 3) coprime to
    P, and orders by (q, spiral index, template index).
    """
    # one entry per prime value: distinct primes q_j are what the recipe needs
    found: dict[int, tuple[int, int, int, int, str]] = {}
    templates = pair_templates(params, template_mode)
    for idx, (X, Y) in enumerate(spiral(radius)):
        for t_idx, (name, tmpl) in enumerate(templates):
            b, c = tmpl(X, Y)
            q = form_value(params, b, c)
            if q <= 0 or q % 3 != 2 or math.gcd(q, params.P) != 1:
                continue
            if not is_prime(q):
                continue
            entry = (idx, t_idx, b, c, name)
            if q not in found or entry < found[q]:
                found[q] = entry
    ranked = sorted(found.items())
    if len(ranked) < count:
        raise SearchExhausted(
            f"only {len(ranked)} coefficient-pair primes within spiral radius {radius}"
        )
    return [
        FormPrime(b=entry[2], c=entry[3], q=q, template=entry[4])
        for q, entry in ranked[:count]
    ]


def descent_template(params: FieldParams) -> Callable[[int, int], tuple[int, int]]:
    p, P, iota = params.p, params.P, params.iota
    if iota not in (1, 2):
        raise ValueError("iota must be classified before searching")
    if p == 3:
        return lambda A, C: (P * A - 1, P * C + 1)
    s = 3 * P**iota
    return lambda A, C: (s * A + 1, s * C + 1)


def descent_value(params: FieldParams, a: int, c: int) -> int:
    return a**3 + params.P ** (2 * params.iota) * c**3


def descent_conditions_ok(params: FieldParams, a: int, c: int, l: int) -> bool:
    """Residue conditions a = +-1, c != 0 (mod p), plus the p = 5 / P = 3 extras."""
    p = params.p
    if a % p not in (1, p - 1) or c % p == 0:
        return False
    if p == 5 and (a + c) % 5 == 0:
        return False
    if params.P == 3 and (a + c) % 3 != 0:
        return False
    return True


def search_descent_primes(
    params: FieldParams,
    count: int,
    min_l: int,
    radius: int = 64,
) -> list[DescentCandidate]:
    """First `count` descent primes l >= min_l, smallest first.

    Same fixed-spiral budget discipline as the coefficient-pair search.
    Every output candidate re-verifies its congruence conditions
    independently of the generating template.
    """
    tmpl = descent_template(params)
    found: dict[int, tuple[int, int, int]] = {}
    for idx, (A, C) in enumerate(spiral(radius)):
        a, c = tmpl(A, C)
        l = descent_value(params, a, c)
        if l < min_l or l % 3 != 2 or math.gcd(l, params.P) != 1:
            continue
        if not descent_conditions_ok(params, a, c, l):
            continue
        if not is_prime(l):
            continue
        entry = (idx, a, c)
        if l not in found or entry < found[l]:
            found[l] = entry
    ranked = sorted(found.items())
    if len(ranked) < count:
        raise SearchExhausted(
            f"only {len(ranked)} descent primes within spiral radius {radius}"
        )
    out = []
    for l, (_, a, c) in ranked[:count]:
        assert l % params.p in (1, params.p - 1), "l = a^3 = +-1 mod p must hold"
        out.append(DescentCandidate(a=a, c=c, l=l))
    return out
