"""Quadratic-residue descent for the Fermat-type equation x^3 + P^iota*y^3 = l^m * z^n.

Whether every primitive solution is forced to satisfy x = y = 0 (mod l)
comes down to the coefficient sequence C_k defined by

    A_k + B_k*pi^iota + C_k*pi^(2*iota) = eps^k * (a + c*pi^(2*iota))^m  (mod p)

never vanishing mod p.  C_k * alpha^(-k) is a quadratic polynomial in k
mod p, so non-vanishing for all integers k is equivalent to a quadratic
having no roots in F_p, i.e. to a single Legendre-symbol condition on

    delta = rho^2 -+ 2*c*m,   rho = beta/(2*alpha) - gamma/beta,

with the sign matching a = +-1 (mod p) (for iota = 2 the roles of beta and
gamma swap, with beta/p in place of gamma).  Both the delta route and the
direct expansion of eps^k * (a + c*pi^(2*iota))^m are implemented and
cross-checked on every certificate; they must never disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cubicring import FieldParams, RingElement, mul, power
from .errors import ConditionFailed, NoExponent, NonInvertible, OracleMismatch
from .primesearch import DescentCandidate, is_prime, jacobi
import math


def legendre(n: int, p: int) -> int:
    """Quadratic residue symbol (n/p) in {-1, 0, 1} for an odd prime p."""
    return jacobi(n % p, p)


def _unit_element(unit) -> RingElement:
    return unit.element if hasattr(unit, "element") else unit


def rho(params: FieldParams, unit) -> int:
    """The residue rho = Y/(2X) - Z/Y mod p at (X, Y, Z) fixed by iota.

    iota = 1 plugs in (alpha, beta, gamma); iota = 2 plugs in
    (alpha, gamma, beta/p).  Raises NonInvertible when the middle argument
    is 0 mod p, which signals a misclassified iota (alpha is always
    invertible: the unit has norm +-1, so alpha^3 = +-1 mod p).
    """
    el = _unit_element(unit)
    p = params.p
    alpha, beta, gamma = el.a, el.b, el.c
    if params.iota == 1:
        x, y, z = alpha, beta, gamma
    elif params.iota == 2:
        if beta % p != 0:
            raise NonInvertible("iota = 2 requires beta = 0 mod p")
        x, y, z = alpha, gamma, beta // p
    else:
        raise NonInvertible("iota not classified")
    if y % p == 0:
        raise NonInvertible("middle coefficient not invertible mod p; wrong iota?")
    return (y * pow(2 * x, -1, p) - z * pow(y, -1, p)) % p


def delta(params: FieldParams, unit, a: int, c: int, m: int) -> int:
    """delta(a^(m), c^(m)) = rho^2 -+ 2*c*m mod p, sign matching a = +-1 mod p.

    This is the value of rho^2 - 2*Z/X at the reduction of
    (a + c*pi^(2*iota))^m, whose coefficients mod p are (1, 0, +-m*c) for
    even m.
    """
    p = params.p
    if m <= 0 or m % 2 != 0:
        raise ValueError("m must be a positive even integer")
    if a % p == 1:
        sign = 1
    elif a % p == p - 1:
        sign = -1
    else:
        raise ValueError("a must be +-1 mod p")
    r = rho(params, unit)
    return (r * r - sign * 2 * c * m) % p


def _beta_gamma_vanish(params: FieldParams, unit) -> bool:
    el = _unit_element(unit)
    return el.b % params.p == 0 and el.c % params.p == 0


def find_even_exponent(params: FieldParams, unit, candidate: DescentCandidate) -> int:
    """Smallest positive even m < p making delta a quadratic non-residue.

    When beta = gamma = 0 (mod p) the delta machinery degenerates and any
    even exponent works as soon as c != 0 (mod p); m = 2 is returned.
    """
    p = params.p
    if _beta_gamma_vanish(params, unit):
        if candidate.c % p != 0:
            return 2
        raise NoExponent("c = 0 mod p in the beta = gamma = 0 case")
    for m in range(2, p, 2):
        if legendre(delta(params, unit, candidate.a, candidate.c, m), p) == -1:
            return m
    raise NoExponent(f"no even exponent below p = {p} works")


def generator_element(params: FieldParams, a: int, c: int) -> RingElement:
    """a + c*pi^(2*iota) written on the 1, pi, pi^2 basis of Z[pi]."""
    if params.iota == 1:
        return RingElement(a, 0, c)
    return RingElement(a, c * params.P, 0)


def ck_sequence(
    params: FieldParams,
    unit,
    a: int,
    c: int,
    m: int,
    ks: Iterable[int],
) -> list[int]:
    """C_k mod p for eps^k * (a + c*pi^(2*iota))^m, by direct ring expansion.

    The element is expanded exactly in Z[pi] and then read on the
    1, pi^iota, pi^(2*iota) basis: for iota = 2 that basis is 1, pi^2,
    P*pi, so the pi-coefficient must be divisible by P (it is whenever the
    unit lies in Z[pi^2], which the iota = 2 classification guarantees for
    P = p).
    """
    p = params.p
    eps = _unit_element(unit)
    ks = list(ks)
    if any(k < 0 for k in ks):
        raise ValueError("k must be non-negative; residues repeat with period p anyway")
    k_max = max(ks, default=-1)
    modulus = p if params.iota == 1 else p * params.P
    gen = generator_element(params, a, c)
    cur = power(gen, m, params, modulus)
    eps_red = eps.reduce(modulus)
    values: list[int] = []
    for k in range(k_max + 1):
        values.append(_read_ck(cur, params))
        cur = mul(cur, eps_red, params).reduce(modulus)
    return [values[k] for k in ks]


def _read_ck(x: RingElement, params: FieldParams) -> int:
    if params.iota == 1:
        return x.c % params.p
    if x.b % params.P != 0:
        raise NonInvertible("element not in Z[pi^2]; cannot read iota = 2 coefficients")
    return (x.b // params.P) % params.p


@dataclass(frozen=True)
class DescentCertificate:
    """Witness that x^3 + P^iota*y^3 = l^m * z^n forces x = y = 0 mod l.

    delta_value is None exactly in the beta = gamma = 0 (mod p) branch,
    where the decision is c != 0 (mod p) instead of a Legendre symbol.
    """

    candidate: DescentCandidate
    m: int
    delta_value: int | None
    ck_checked: bool

    @property
    def L(self) -> int:
        return self.candidate.l**self.m


def certify_descent(params: FieldParams, unit, candidate: DescentCandidate) -> DescentCertificate:
    """Validate the descent-prime conditions, pick m, and cross-check C_k.

    Re-validates from raw integers:
      (1) l = a^3 + P^(2*iota)*c^3 is a prime = 2 (mod 3) coprime to P;
      (2) a = +-1 and c != 0 (mod p);
      (3) for p = 5, additionally c != -a (mod 5);
      (4) for P = 3, additionally c = -a (mod 3).
    Then finds the even exponent via delta and independently verifies
    C_k != 0 (mod p) for k = 0..p-1 by direct expansion (sufficient for
    all integer k since C_k/alpha^k is quadratic in k mod p).  A
    disagreement between the two routes aborts: it can only mean a bug.
    """
    p, P = params.p, params.P
    a, c, l = candidate.a, candidate.c, candidate.l
    value = a**3 + P ** (2 * params.iota) * c**3
    if value != l or not is_prime(l) or l % 3 != 2 or math.gcd(l, P) != 1:
        raise ConditionFailed(1, f"l = {l} is not a prime = 2 mod 3 of the descent shape")
    if a % p not in (1, p - 1) or c % p == 0:
        raise ConditionFailed(2, f"(a, c) = ({a}, {c}) violates a = +-1, c != 0 mod {p}")
    if p == 5 and (a + c) % 5 == 0:
        raise ConditionFailed(3, "p = 5 requires c != -a mod 5")
    if P == 3 and (a + c) % 3 != 0:
        raise ConditionFailed(4, "P = 3 requires c = -a mod 3")

    degenerate = _beta_gamma_vanish(params, unit)
    m = find_even_exponent(params, unit, candidate)
    delta_value = None if degenerate else delta(params, unit, a, c, m)

    cks = ck_sequence(params, unit, a, c, m, range(p))
    scan_ok = all(v % p != 0 for v in cks)
    delta_ok = (c % p != 0) if degenerate else (legendre(delta_value, p) == -1)
    if scan_ok != delta_ok:
        raise OracleMismatch(
            f"delta decision {delta_ok} vs direct C_k scan {scan_ok} for l = {l}, m = {m}"
        )
    if not scan_ok:
        raise NoExponent(f"C_k vanishes mod {p} for m = {m}")

    assert pow(l, m, 3) == 1 and pow(l, m, p) == 1, "l^m = 1 mod 3 and mod p by construction"
    return DescentCertificate(candidate=candidate, m=m, delta_value=delta_value, ck_checked=True)


def ck_quadratic_check(
    params: FieldParams, unit, a: int, c: int, m: int
) -> tuple[Sequence[int], Sequence[int]]:
    """Fit C_k * alpha^(-k) from k = 0, 1, 2 as a quadratic and predict all k < p.

    Returns (direct values, quadratic-model values) for k = 0..p-1; the two
    must agree, which is the induction behind the delta shortcut.
    """
    p = params.p
    alpha = _unit_element(unit).a
    direct = ck_sequence(params, unit, a, c, m, range(p))
    inv_alpha = pow(alpha, -1, p)
    normalized = [(v * pow(inv_alpha, k, p)) % p for k, v in enumerate(direct)]
    f0, f1, f2 = normalized[0], normalized[1 % p], normalized[2 % p]
    # quadratic through (0, f0), (1, f1), (2, f2) with arithmetic mod p
    inv2 = pow(2, -1, p)
    a2 = ((f2 - 2 * f1 + f0) * inv2) % p
    a1 = (f1 - f0 - a2) % p
    a0 = f0 % p
    model = [((a2 * k * k + a1 * k + a0) * pow(alpha, k, p)) % p for k in range(p)]
    return direct, model
