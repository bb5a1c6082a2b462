"""Fundamental units, iota, the unit-conjecture scan, and the density bound."""

from fractions import Fraction

import pytest

from hassecurves.cubicring import RingElement, mul, norm, power, unit_inverse
from hassecurves.units import (
    BACKEND_ENUMERATION,
    BACKEND_REDUCTION,
    UnitCache,
    aacm_scan,
    certify_fundamental,
    check_aacm,
    classify_iota,
    density_report,
    fundamental_unit,
    normalize_unit,
)

# published units; the last two are the small (< 1) representatives whose
# inverses are the > 1 normalizations
PUBLISHED = {
    3: (4, 3, 2),
    5: (41, 24, 14),
    6: (109, 60, 33),
    7: (4, 2, 1),
    11: (1, 4, -2),
    14: (1, 2, -1),
}


def expected_normalized(P):
    return normalize_unit(RingElement(*PUBLISHED[P]), P)


def test_reduction_backend_matches_published():
    for P in PUBLISHED:
        u = fundamental_unit(P, BACKEND_REDUCTION)
        assert u.element == expected_normalized(P), P


def test_enumeration_backend_matches_published():
    for P in PUBLISHED:
        u = fundamental_unit(P, BACKEND_ENUMERATION)
        assert u.element == expected_normalized(P), P


def test_normalization_representatives():
    assert normalize_unit(RingElement(1, 4, -2), 11) == RingElement(89, 40, 18)
    assert normalize_unit(RingElement(1, 2, -1), 14) == RingElement(29, 12, 5)
    assert normalize_unit(RingElement(2, 0, -1), 3) == RingElement(4, 3, 2)
    assert normalize_unit(RingElement(-4, -3, -2), 3) == RingElement(4, 3, 2)


def test_unit_invariants():
    from hassecurves.cubicring import compare_real

    for P in (2, 3, 5, 6, 7, 10, 11, 14, 17, 19, 20):
        u = fundamental_unit(P)
        assert norm(u.element, P) == 1
        assert compare_real(u.element, 1, P) > 0
        inv = unit_inverse(u.element, P)
        assert mul(u.element, inv, P) == RingElement(1, 0, 0)


def test_backends_agree_small():
    for P in (2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15, 17, 18, 19, 20, 22):
        a = fundamental_unit(P, BACKEND_REDUCTION)
        b = fundamental_unit(P, BACKEND_ENUMERATION)
        assert a.element == b.element, P


def test_invalid_P():
    with pytest.raises(ValueError):
        fundamental_unit(27)
    with pytest.raises(ValueError):
        fundamental_unit(1)


def test_certify_fundamental():
    for P in (3, 7, 11, 23, 29, 41):
        assert certify_fundamental(fundamental_unit(P))
    from hassecurves.units import FundamentalUnit

    square = power(RingElement(4, 2, 1), 2, 7)
    assert not certify_fundamental(FundamentalUnit(element=square, P=7, backend="x"))
    cube = power(RingElement(4, 3, 2), 3, 3)
    assert not certify_fundamental(FundamentalUnit(element=cube, P=3, backend="x"))


def test_classify_iota_examples():
    assert classify_iota(RingElement(4, 3, 2), 3) == 2
    assert classify_iota(RingElement(109, 60, 33), 3) == 1
    assert classify_iota(RingElement(4, 2, 1), 7) == 1


def test_classify_iota_truth_table():
    # pure function of (beta mod p, gamma mod p), every residue pair
    p = 5
    for beta in range(p):
        for gamma in range(p):
            got = classify_iota(RingElement(1, beta, gamma), p)
            if beta != 0:
                assert got == 1
            elif gamma != 0:
                assert got == 2
            else:
                assert got == 1


def test_check_aacm_examples():
    r_p, r_2p = check_aacm(7)
    assert r_p.holds and r_2p.holds
    assert r_p.P == 7 and r_2p.P == 14
    r11, r22 = check_aacm(11)
    assert r11.holds and r22.holds
    with pytest.raises(ValueError):
        check_aacm(3)
    d3, d6 = check_aacm(3, allow_p3=True)
    assert not d3.holds and d3.beta_mod_p == 0
    assert not d6.holds  # beta = gamma = 0 there


def test_aacm_scan_small():
    rep = aacm_scan(100)
    assert rep.exceptions == [] and rep.skipped == []
    assert rep.checked[0] == 5 and len(rep.checked) == 23  # primes in [5, 100)


def test_aacm_scan_diagnostic_p3():
    rep = aacm_scan(5, include_diagnostic_p3=True)
    assert {r.p for r in rep.exceptions} == {3}
    assert rep.skipped == []


def test_aacm_scan_empty():
    rep = aacm_scan(2)
    assert rep.checked == [] and rep.exceptions == []


def test_unit_cache_roundtrip(tmp_path):
    path = tmp_path / "units.cache"
    cache = UnitCache(path)
    u = fundamental_unit(7)
    cache.put(u)
    cache.put(fundamental_unit(11))
    reloaded = UnitCache(path)
    assert reloaded.get(7).element == u.element
    assert reloaded.get(11) is not None and reloaded.get(5) is None
    text = path.read_text()
    assert "7 4 2 1 1 reduction" in text


def test_unit_cache_rejects_corrupt_lines(tmp_path):
    path = tmp_path / "units.cache"
    path.write_text("7 1 2 3 1 reduction\nnot a record\n")
    cache = UnitCache(path)
    assert cache.get(7) is None  # norm check failed, line dropped


def test_equation_order_scan_covers_nonmaximal():
    # p = 17 = -1 (mod 9): the equation order Z[17^(1/3)] is not maximal,
    # but the scan still checks it (any unit with beta != 0 certifies)
    r_p, r_2p = check_aacm(17)
    assert not r_p.equation_order_maximal
    assert r_p.holds and r_2p.holds


def test_density_single_factor():
    rep = density_report(2)
    # exact value (2/3) * zeta(2)^(-1); enclosure must contain it tightly
    import mpmath

    mpmath.mp.prec = 120
    ref = Fraction(2, 3) * 6 / Fraction(str(mpmath.pi**2))
    assert abs(float(rep.d_M.mid) - float(ref)) < 1e-20
    assert float(rep.d_M.width) < 1e-30


def test_density_bound_10_matches_oracle():
    import mpmath

    mpmath.mp.prec = 160
    rep = density_report(10)
    oracle = Fraction(35, 96) * 6 / Fraction(str(mpmath.pi)) ** 2
    assert abs(float(rep.d_M.mid) - float(oracle)) < 1e-10
    assert rep.d_M.contains(oracle) or abs(float(rep.d_M.mid) - float(oracle)) < 1e-12


def test_density_rejects_bad_bound():
    with pytest.raises(ValueError):
        density_report(1)
