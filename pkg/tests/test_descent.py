"""Residue-symbol descent: legendre, rho, delta, exponents, C_k certificates."""

import random

import pytest

from hassecurves.cubicring import FieldParams, RingElement
from hassecurves.descent import (
    certify_descent,
    ck_quadratic_check,
    ck_sequence,
    delta,
    find_even_exponent,
    generator_element,
    legendre,
    rho,
)
from hassecurves.errors import ConditionFailed, NoExponent, NonInvertible
from hassecurves.primesearch import DescentCandidate, sieve_primes

P7 = FieldParams(p=7, P=7, iota=1)
P14 = FieldParams(p=7, P=14, iota=1)
P3 = FieldParams(p=3, P=3, iota=2)
P6 = FieldParams(p=3, P=6, iota=1)
P11 = FieldParams(p=11, P=11, iota=1)

U7 = RingElement(4, 2, 1)
U14 = RingElement(29, 12, 5)
U3 = RingElement(4, 3, 2)
U6 = RingElement(109, 60, 33)
U11 = RingElement(89, 40, 18)


def brute_legendre(n, p):
    n %= p
    if n == 0:
        return 0
    return 1 if n in {x * x % p for x in range(1, p)} else -1


def test_legendre_mod_11_published_row():
    # the one Legendre table row that is internally consistent at its source
    row = [legendre(n, 11) for n in range(11)]
    assert row == [0, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1]


def test_legendre_examples():
    assert legendre(3, 11) == 1
    assert legendre(2, 11) == -1
    assert legendre(0, 5) == 0
    assert legendre(6, 13) == -1  # by brute force; published mod-13 row has slips


def test_legendre_vs_brute_force_all_small_primes():
    for p in sieve_primes(200):
        if p == 2:
            continue
        for n in range(p):
            assert legendre(n, p) == brute_legendre(n, p), (n, p)


def test_rho_values():
    assert rho(P7, U7) == 5
    assert rho(P14, RingElement(1, 2, -1)) == 5  # small-unit representative
    assert rho(P14, U14) == 5
    assert rho(P3, U3) == 2
    assert rho(P3, RingElement(2, 0, -1)) == 2
    assert rho(P11, U11) == 8
    assert pow(rho(P7, U7), 2, 7) == 4
    assert pow(rho(P11, U11), 2, 11) == 9


def test_rho_non_invertible():
    with pytest.raises(NonInvertible):
        rho(P6, U6)  # beta = gamma = 0 mod 3
    with pytest.raises(NonInvertible):
        rho(P3, RingElement(1, 1, 1))  # iota = 2 needs beta divisible by p


def test_delta_values():
    assert delta(P7, U7, 64, 1, 4) == 3  # 4 - 2*4 mod 7
    assert delta(P3, U3, 8, 1, 2) == 2
    d = delta(P11, U11, 100, 1, 6)
    assert d == (9 - 2 * 6) % 11 == 8
    assert legendre(d, 11) == -1
    with pytest.raises(ValueError):
        delta(P7, U7, 64, 1, 3)  # odd m
    with pytest.raises(ValueError):
        delta(P7, U7, 3, 1, 2)  # a not +-1 mod 7


def test_find_even_exponent_goldens():
    assert find_even_exponent(P7, U7, DescentCandidate(64, 1, 262193)) == 4
    assert find_even_exponent(P3, U3, DescentCandidate(8, 1, 593)) == 2
    assert find_even_exponent(P11, U11, DescentCandidate(100, 1, 1000121)) == 6


def test_find_even_exponent_degenerate_branch():
    # beta = gamma = 0 mod p: c != 0 suffices; m = 2
    assert find_even_exponent(P6, U6, DescentCandidate(11, 1, 1367)) == 2
    with pytest.raises(NoExponent):
        find_even_exponent(P6, U6, DescentCandidate(11, 3, 0))


def ck_oracle(params, unit, a, c, m, k_max):
    """Independent expansion: repeated schoolbook products in Z[pi], then reduce."""
    P, p = params.P, params.p

    def raw_mul(x, y):
        return (
            x[0] * y[0] + P * (x[1] * y[2] + x[2] * y[1]),
            x[0] * y[1] + x[1] * y[0] + P * x[2] * y[2],
            x[0] * y[2] + x[1] * y[1] + x[2] * y[0],
        )

    gen = (a, 0, c) if params.iota == 1 else (a, c * P, 0)
    acc = (1, 0, 0)
    for _ in range(m):
        acc = raw_mul(acc, gen)
    out = []
    eps = (unit.a, unit.b, unit.c)
    for _ in range(k_max + 1):
        if params.iota == 1:
            out.append(acc[2] % p)
        else:
            assert acc[1] % P == 0
            out.append((acc[1] // P) % p)
        acc = raw_mul(acc, eps)
    return out


def test_ck_sequence_against_oracle():
    got = ck_sequence(P7, U7, 64, 1, 4, range(7))
    assert got == ck_oracle(P7, U7, 64, 1, 4, 6)
    assert all(v % 7 != 0 for v in got)
    got3 = ck_sequence(P3, U3, 8, 1, 2, range(3))
    assert got3 == ck_oracle(P3, U3, 8, 1, 2, 2)
    assert all(v % 3 != 0 for v in got3)


def test_ck_sequence_trivial():
    # m = 1, k = 0: C_0 = c mod p
    for params, unit in [(P7, U7), (P3, U3), (P11, U11)]:
        for c in range(1, params.p):
            assert ck_sequence(params, unit, 1, c, 1, [0]) == [c % params.p]


def test_generator_element_norm_is_descent_value():
    from hassecurves.cubicring import norm

    assert norm(generator_element(P7, 64, 1), P7) == 64**3 + 49
    assert norm(generator_element(P3, 8, 1), P3) == 8**3 + 81


def test_ck_quadratic_model():
    for params, unit, a, c, m in [
        (P7, U7, 64, 1, 4),
        (P11, U11, 100, 1, 6),
        (P3, U3, 8, 1, 2),
    ]:
        direct, model = ck_quadratic_check(params, unit, a, c, m)
        assert direct == model


def test_ck_quadratic_model_many_configurations():
    # 50 seeded configurations with small primes
    rng = random.Random(1729)
    configs = 0
    fixtures = [(P7, U7), (P11, U11), (P3, U3), (P14, U14), (P6, U6)]
    while configs < 50:
        params, unit = fixtures[rng.randrange(len(fixtures))]
        p = params.p
        a = rng.choice([1, p - 1]) + p * rng.randrange(5)
        c = rng.randrange(1, p)
        m = 2 * rng.randrange(1, max(2, (p - 1) // 2 + 1))
        if params.iota == 2 and unit.b % params.P != 0:
            continue
        direct, model = ck_quadratic_check(params, unit, a, c, m)
        assert direct == model, (params, a, c, m)
        configs += 1


def test_delta_decision_equals_ck_scan():
    # the Legendre decision and the exhaustive C_k scan agree everywhere
    rng = random.Random(42)
    checked = 0
    fixtures = [(P7, U7), (P11, U11), (P3, U3), (P14, U14)]
    while checked < 60:
        params, unit = fixtures[rng.randrange(len(fixtures))]
        p = params.p
        a = rng.choice([1, p - 1]) + p * rng.randrange(3)
        c = rng.randrange(1, p)
        m = 2 * rng.randrange(1, max(2, p // 2))
        dec_delta = legendre(delta(params, unit, a, c, m), p) == -1
        cks = ck_sequence(params, unit, a, c, m, range(p))
        dec_scan = all(v % p != 0 for v in cks)
        assert dec_delta == dec_scan, (params, a, c, m)
        checked += 1


def test_certify_descent_goldens():
    cert = certify_descent(P7, U7, DescentCandidate(64, 1, 262193))
    assert cert.m == 4 and cert.ck_checked and cert.delta_value == 3
    assert cert.L == 262193**4
    cert9 = certify_descent(P3, U3, DescentCandidate(8, 1, 593))
    assert cert9.m == 2
    cert11 = certify_descent(P11, U11, DescentCandidate(100, 1, 1000121))
    assert cert11.m == 6


def test_certify_descent_condition_failures():
    # l = 113 = 4^3 + 49 is a genuine prime = 2 mod 3, but a = 4 != +-1 mod 7
    with pytest.raises(ConditionFailed) as err:
        certify_descent(P7, U7, DescentCandidate(4, 1, 113))
    assert err.value.index == 2
    # c = 0 mod p also violates condition (2): l = 1072 is even, so (1) fires first here
    with pytest.raises(ConditionFailed) as err1:
        certify_descent(P7, U7, DescentCandidate(64, 7, 64**3 + 49 * 7**3))
    assert err1.value.index == 1
    # c = 0 mod p with all of condition (1) genuinely satisfied:
    # 8^3 + 81*3^3 = 2699 is a prime = 2 mod 3 coprime to 3
    with pytest.raises(ConditionFailed) as err_c:
        certify_descent(P3, U3, DescentCandidate(8, 3, 2699))
    assert err_c.value.index == 2
    # p = 5 exclusion: c = -a mod 5
    p5 = FieldParams(p=5, P=5, iota=1)
    u5 = RingElement(41, 24, 14)
    bad = DescentCandidate(4, 1, 4**3 + 25)  # 89 is prime = 2 mod 3; a = -1, c = 1 = -a mod 5
    with pytest.raises(ConditionFailed) as err3:
        certify_descent(p5, u5, bad)
    assert err3.value.index == 3


def test_certify_descent_degenerate_case():
    cert = certify_descent(P6, U6, DescentCandidate(11, 1, 1367))
    assert cert.m == 2 and cert.delta_value is None and cert.ck_checked
