"""Ternary forms: expansion, gradients, non-singularity, rendering."""

import pytest
import sympy

from hassecurves.cubicring import FieldParams
from hassecurves.errors import ArityMismatch
from hassecurves.forms import (
    binary_part,
    build_curve,
    check_nonsingular,
    eval_with_gradient,
    evaluate,
    factored_evaluate,
    from_json,
    make_form,
    resultant,
    rhs_constant,
    to_json,
    to_latex,
)

P7 = FieldParams(p=7, P=7, iota=1)
P3 = FieldParams(p=3, P=3, iota=2)


def curve7():
    return build_curve(P7, [(1, 4), (4, 1)], 262193, 4, 7)


def test_build_curve_degree7():
    f = curve7()
    assert f.degree == 7
    assert to_latex(f) == "(X^3+7Y^3)(X^2+4XY+16Y^2)(16X^2+4XY+Y^2) = 262193^4Z^7"
    assert rhs_constant(f) == 262193**4


def test_build_curve_degree9_recomputed_l():
    f = build_curve(P3, [(1, 2), (-2, 5), (2, -1)], 593, 2, 9)
    assert f.degree == 9
    assert "(X^3+9Y^3)(X^2+2XY+4Y^2)(4X^2-10XY+25Y^2)(4X^2-2XY+Y^2)" in to_latex(f)


def test_build_curve_rejects_bad_arity():
    with pytest.raises(ArityMismatch):
        build_curve(P7, [], 5, 1, 3)
    with pytest.raises(ArityMismatch):
        build_curve(P7, [(1, 4)], 5, 1, 7)
    with pytest.raises(ArityMismatch):
        build_curve(P7, [(1, 4), (4, 1)], 5, 1, 8)


def test_factored_vs_expanded_many_points():
    f = curve7()
    pts = [(x, y, z) for x in range(-3, 4) for y in range(-3, 4) for z in (1, -2, 3)]
    assert len(pts) > 100
    for pt in pts:
        assert evaluate(f, pt) == factored_evaluate(f, pt)


def test_eval_with_gradient_hensel_point():
    f = curve7()
    v, grad = eval_with_gradient(f, (1, 0, 1), modulus=3)
    assert v == 0 and grad[1] % 3 != 0


def test_gradient_at_origin():
    f = curve7()
    v, grad = eval_with_gradient(f, (0, 0, 0))
    assert v == 0 and grad == (0, 0, 0)


def test_euler_identity():
    f = curve7()
    for pt in [(1, 2, 3), (-5, 7, 2), (11, -3, -8), (2, 0, 9)]:
        v, (fx, fy, fz) = eval_with_gradient(f, pt)
        assert f.degree * v == pt[0] * fx + pt[1] * fy + pt[2] * fz


def test_euler_identity_random_forms():
    import random

    rng = random.Random(7)
    for _ in range(25):
        n = rng.choice([5, 7, 9])
        terms = {}
        for _ in range(6):
            i = rng.randrange(n + 1)
            j = rng.randrange(n + 1 - i)
            terms[(i, j, n - i - j)] = rng.randint(-9, 9)
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            continue
        f = make_form(n, [(i, j, k, c) for (i, j, k), c in terms.items()])
        pt = (rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        v, (fx, fy, fz) = eval_with_gradient(f, pt)
        assert n * v == pt[0] * fx + pt[1] * fy + pt[2] * fz


def test_check_nonsingular_goldens():
    ok, _ = check_nonsingular(P7, [(1, 4), (4, 1)], 262193**4)
    assert ok
    ok, why = check_nonsingular(P7, [(1, 4), (2, 8)], 5)
    assert not ok and "projectively" in why
    ok, why = check_nonsingular(P7, [(1, 4), (1, 4)], 5)
    assert not ok
    ok, why = check_nonsingular(P7, [(1, 0)], 5)
    assert not ok and "degenerate" in why
    ok, why = check_nonsingular(P7, [(1, 4)], 0)
    assert not ok


def test_nonsingular_matches_discriminant_oracle():
    # squarefree binary part <=> nonzero discriminant of the dehomogenization
    X = sympy.symbols("x")
    cases = [
        (P7, [(1, 4), (4, 1)]),
        (P3, [(1, 2), (-2, 5), (2, -1)]),
        (P7, [(1, 4), (2, 8)]),
        (P7, [(2, -1), (1, 5)]),
    ]
    for params, pairs in cases:
        ours, _ = check_nonsingular(params, pairs, 17)
        g = (X**3 + params.P_iota) * sympy.prod(
            [b * b * X**2 + b * c * X + c * c for b, c in pairs]
        )
        disc_nonzero = sympy.discriminant(sympy.expand(g), X) != 0
        assert ours == disc_nonzero, (params.P, pairs)


def test_resultant_matches_sympy():
    X = sympy.symbols("x")
    cases = [
        ((1, 0, 0, 7), (1, 4, 16)),
        ((1, 0, 0, 9), (4, -10, 25)),
        ((16, 4, 1), (1, 4, 16)),
        ((2, 3), (5, -7, 11)),
    ]
    for f, g in cases:
        fp = sum(c * X ** (len(f) - 1 - i) for i, c in enumerate(f))
        gp = sum(c * X ** (len(g) - 1 - i) for i, c in enumerate(g))
        assert resultant(f, g) == sympy.resultant(fp, gp)


def test_cubic_quadratic_resultant_is_pair_prime_squared():
    from hassecurves.primesearch import form_value

    for params, (b, c) in [(P7, (1, 4)), (P7, (4, 1)), (P3, (-2, 5))]:
        q = form_value(params, b, c)
        r = resultant((1, 0, 0, params.P_iota), (b * b, b * c, c * c))
        assert abs(r) == q * q


def test_json_roundtrip():
    f = curve7()
    assert from_json(to_json(f)) == f
    bare = make_form(3, [(3, 0, 0, 3), (0, 3, 0, 4), (0, 0, 3, -5)])
    assert from_json(to_json(bare)) == bare


def test_terms_canonical_order():
    f = curve7()
    assert list(f.terms) == sorted(f.terms, key=lambda t: (-t[0], -t[1], -t[2]))


def test_binary_part_detection():
    f = curve7()
    g = binary_part(f)
    assert g is not None and g[(7, 0)] == 16
    from hassecurves.fixtures import fujiwara_curve

    assert binary_part(fujiwara_curve()) is None
