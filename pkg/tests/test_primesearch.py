"""Primality and the bounded binary-cubic prime searches."""

import math

import pytest
import sympy

from hassecurves.cubicring import FieldParams
from hassecurves.errors import SearchExhausted
from hassecurves.primesearch import (
    descent_conditions_ok,
    descent_value,
    form_value,
    is_prime,
    jacobi,
    primality_kind,
    search_coefficient_pairs,
    search_descent_primes,
    sieve_primes,
    spiral,
)

P7 = FieldParams(p=7, P=7, iota=1)
P3 = FieldParams(p=3, P=3, iota=2)
P11 = FieldParams(p=11, P=11, iota=1)


def test_is_prime_examples():
    assert is_prime(262193)
    assert not is_prime(1)
    assert not is_prime(3058346)  # even: 11*67^3 + (-63)^3
    assert is_prime(2) and is_prime(3) and not is_prime(-5) and not is_prime(0)


def test_is_prime_vs_trial_division_full_ten_million():
    # the sieve is the oracle; every n below 10^7 is compared
    limit = 10**7
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, limit + 1, i))
    for n in range(limit + 1):
        assert is_prime(n) == bool(flags[n]), n


def test_primality_kind():
    assert primality_kind(101) == "prime"
    assert primality_kind(2**89 - 1) == "probable_prime"
    assert primality_kind(10) == "composite"


def test_baillie_large():
    assert is_prime(2**89 - 1)
    assert not is_prime((2**89 - 1) * (2**107 - 1))


def test_jacobi_matches_sympy():
    for n in range(-20, 60):
        for m in range(1, 60, 2):
            assert jacobi(n, m) == sympy.jacobi_symbol(n, m)


def test_spiral_prefix_and_coverage():
    pts = list(spiral(2))
    assert pts[:6] == [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]
    assert len(pts) == len(set(pts)) == 25
    assert set(pts) == {(x, y) for x in range(-2, 3) for y in range(-2, 3)}


def test_coefficient_pairs_degree7():
    got = search_coefficient_pairs(P7, 3, template_mode="section5")
    assert [(f.b, f.c, f.q) for f in got] == [(1, 4, 71), (4, 1, 449), (34, -65, 503)]


def test_coefficient_pairs_degree9():
    got = search_coefficient_pairs(P3, 3)
    assert [(f.b, f.c, f.q) for f in got] == [(1, 2, 17), (-2, 5, 53), (2, -1, 71)]


def test_coefficient_pairs_degree11():
    got = search_coefficient_pairs(P11, 1)
    assert (got[0].b, got[0].c, got[0].q) == (-1, 34, 39293)


def test_pair_outputs_reverify():
    for params, mode in [(P7, "section5"), (P3, "paper"), (P11, "paper")]:
        for f in search_coefficient_pairs(params, 5, template_mode=mode):
            assert f.q == form_value(params, f.b, f.c)
            assert f.q % 3 == 2 and math.gcd(f.q, params.P) == 1 and is_prime(f.q)


def test_descent_primes_degree7():
    got = search_descent_primes(P7, 1, min_l=8)
    assert (got[0].a, got[0].c, got[0].l) == (64, 1, 262193)


def test_descent_primes_degree11():
    got = search_descent_primes(P11, 1, min_l=12)
    assert (got[0].a, got[0].c, got[0].l) == (100, 1, 1000121)


def test_descent_primes_degree9_recomputed():
    got = search_descent_primes(P3, 4, min_l=6)
    triples = [(d.a, d.c, d.l) for d in got]
    # the published value 431 is not representable; the slot (8, 1) gives 593
    assert (8, 1, 593) in triples
    assert descent_value(P3, 8, 1) == 593
    assert all(l != 431 for _, _, l in triples)


def test_descent_outputs_reverify():
    for params, min_l in [(P7, 8), (P3, 6), (P11, 12)]:
        for d in search_descent_primes(params, 3, min_l=min_l, radius=96):
            assert d.l == descent_value(params, d.a, d.c)
            assert d.l % 3 == 2 and is_prime(d.l)
            assert descent_conditions_ok(params, d.a, d.c, d.l)
            # l = a^3 = +-1 mod p, so l^m = 1 mod p for even m
            assert d.l % params.p in (1, params.p - 1)


def test_descent_p5_never_hits_excluded_class():
    p5 = FieldParams(p=5, P=5, iota=1)
    for d in search_descent_primes(p5, 3, min_l=6, radius=96):
        assert (d.a + d.c) % 5 != 0


def test_search_exhausted():
    with pytest.raises(SearchExhausted):
        search_coefficient_pairs(P7, 500, radius=4)
    with pytest.raises(SearchExhausted):
        search_descent_primes(P7, 50, min_l=8, radius=3)


def test_sieve():
    assert sieve_primes(1) == []
    assert sieve_primes(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(sieve_primes(10**5)) == 9592
