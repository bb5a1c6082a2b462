"""Ternary homogeneous forms: construction, evaluation, non-singularity.

The curves of interest have the factored shape

    F(X, Y, Z) = (X^3 + P^iota*Y^3) * prod_j (b_j^2 X^2 + b_j c_j XY + c_j^2 Y^2) - L*Z^n

with L = l^m a prime power.  The expanded sparse form is what gets
evaluated and serialized; the factorization is kept as provenance because
local solubility certificates and the non-singularity reduction both work
factor by factor.

Singularity reduces to squarefreeness of the binary part G(X, Y): at a
singular point, F_Z = -n*L*Z^(n-1) forces Z = 0, and on Z = 0 the
Jacobian degenerates exactly at a repeated root of G.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cubicring import FieldParams
from .errors import ArityMismatch

Term = tuple[int, int, int, int]  # (i, j, k, coefficient), i + j + k = degree


@dataclass(frozen=True)
class FormProvenance:
    P: int
    iota: int
    pairs: tuple[tuple[int, int], ...]
    l: int
    m: int

    @property
    def L(self) -> int:
        return self.l**self.m


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    terms: tuple[Term, ...]
    provenance: FormProvenance | None = None

    def __post_init__(self):
        seen = set()
        for i, j, k, coef in self.terms:
            if i + j + k != self.degree:
                raise ValueError(f"term {(i, j, k)} does not have degree {self.degree}")
            if coef == 0:
                raise ValueError("zero coefficient stored")
            if (i, j, k) in seen:
                raise ValueError(f"duplicate exponent triple {(i, j, k)}")
            seen.add((i, j, k))


def _sorted_terms(d: dict[tuple[int, int, int], int]) -> tuple[Term, ...]:
    # graded-lex: all terms share the total degree, so plain reverse-lex on exponents
    return tuple(
        (i, j, k, coef)
        for (i, j, k), coef in sorted(d.items(), key=lambda t: (-t[0][0], -t[0][1], -t[0][2]))
        if coef != 0
    )


def sparse_mul(f: dict, g: dict) -> dict:
    out: dict[tuple[int, int, int], int] = {}
    for (i1, j1, k1), c1 in f.items():
        for (i2, j2, k2), c2 in g.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def make_form(degree: int, terms: Iterable[tuple[int, int, int, int]], provenance=None) -> TernaryForm:
    d: dict[tuple[int, int, int], int] = {}
    for i, j, k, coef in terms:
        d[(i, j, k)] = d.get((i, j, k), 0) + coef
    return TernaryForm(degree=degree, terms=_sorted_terms(d), provenance=provenance)


# fixed point set for the factored-vs-expanded self check; no runtime randomness
_CHECK_POINTS = [
    (1, 1, 1), (2, -1, 1), (-1, 2, 3), (3, 2, -1), (-2, -3, 1),
    (5, 1, -2), (1, -4, 2), (-3, 5, 4), (7, -2, -5), (2, 9, 1),
    (-6, 1, 7), (4, -7, 3), (10, 3, -8), (-9, -4, 5), (8, 11, -3),
    (1, 0, 2), (0, 3, -1), (6, -5, 0), (-1, -1, -1), (12, 7, 5),
]


def build_curve(
    params: FieldParams,
    pairs: Sequence[tuple[int, int]],
    l: int,
    m: int,
    n: int,
) -> TernaryForm:
    """Expand the factored curve of degree n with L = l^m on the right.

    Requires n odd >= 5 and exactly (n-3)/2 coefficient pairs.  The
    expansion is verified against the factored evaluation at a fixed set
    of integer points before the form is returned.
    """
    if n < 5 or n % 2 == 0:
        raise ArityMismatch(f"degree n = {n} must be an odd integer >= 5")
    if len(pairs) != (n - 3) // 2:
        raise ArityMismatch(f"need (n-3)/2 = {(n - 3) // 2} pairs, got {len(pairs)}")
    Pi = params.P_iota
    L = l**m
    binary: dict = {(3, 0, 0): 1, (0, 3, 0): Pi}
    for b, c in pairs:
        binary = sparse_mul(binary, {(2, 0, 0): b * b, (1, 1, 0): b * c, (0, 2, 0): c * c})
    expanded = dict(binary)
    expanded[(0, 0, n)] = expanded.get((0, 0, n), 0) - L
    prov = FormProvenance(P=params.P, iota=params.iota, pairs=tuple(map(tuple, pairs)), l=l, m=m)
    form = TernaryForm(degree=n, terms=_sorted_terms(expanded), provenance=prov)
    for pt in _CHECK_POINTS:
        assert evaluate(form, pt) == factored_evaluate(form, pt), "expansion self-check failed"
    return form


def factored_evaluate(form: TernaryForm, point: Sequence[int]) -> int:
    prov = form.provenance
    if prov is None:
        raise ValueError("form has no factorization provenance")
    X, Y, Z = point
    acc = X**3 + prov.P**prov.iota * Y**3
    for b, c in prov.pairs:
        acc *= b * b * X * X + b * c * X * Y + c * c * Y * Y
    return acc - prov.L * Z**form.degree


def evaluate(form: TernaryForm, point: Sequence[int], modulus: int | None = None) -> int:
    X, Y, Z = point
    total = 0
    for i, j, k, coef in form.terms:
        t = coef * X**i * Y**j * Z**k
        total = total + t if modulus is None else (total + t) % modulus
    return total


def eval_with_gradient(
    form: TernaryForm, point: Sequence[int], modulus: int | None = None
) -> tuple[int, tuple[int, int, int]]:
    """F and (F_X, F_Y, F_Z) at an integer point, exact or reduced."""
    X, Y, Z = point
    value = 0
    grad = [0, 0, 0]
    for i, j, k, coef in form.terms:
        xi, yj, zk = X**i, Y**j, Z**k
        value += coef * xi * yj * zk
        if i:
            grad[0] += coef * i * X ** (i - 1) * yj * zk
        if j:
            grad[1] += coef * j * xi * Y ** (j - 1) * zk
        if k:
            grad[2] += coef * k * xi * yj * Z ** (k - 1)
    if modulus is not None:
        value %= modulus
        grad = [g % modulus for g in grad]
    return value, (grad[0], grad[1], grad[2])


def binary_part(form: TernaryForm) -> dict[tuple[int, int], int] | None:
    """If F = G(X, Y) - L*Z^n (single pure Z^n term), return G's coefficients."""
    g: dict[tuple[int, int], int] = {}
    z_terms = []
    for i, j, k, coef in form.terms:
        if k == 0:
            g[(i, j)] = coef
        else:
            z_terms.append((i, j, k, coef))
    if len(z_terms) != 1:
        return None
    i, j, k, _ = z_terms[0]
    if (i, j, k) != (0, 0, form.degree):
        return None
    return g


def rhs_constant(form: TernaryForm) -> int | None:
    """L in F = G(X, Y) - L*Z^n, when the form has that shape."""
    for i, j, k, coef in form.terms:
        if (i, j, k) == (0, 0, form.degree):
            return -coef
    return None


# ---------------------------------------------------------------------------
# resultants and non-singularity


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of binary forms given by coefficient lists (leading first).

    The Sylvester matrix is built from the full homogeneous coefficient
    vectors, so vanishing dehomogenized leading coefficients are handled
    correctly.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for shift in range(n):
        rows.append([0] * shift + list(f) + [0] * (size - m - 1 - shift))
    for shift in range(m):
        rows.append([0] * shift + list(g) + [0] * (size - n - 1 - shift))
    return _bareiss_det(rows)


def check_nonsingular(
    params: FieldParams, pairs: Sequence[tuple[int, int]], L: int
) -> tuple[bool, str | None]:
    """Squarefreeness of (X^3 + P^iota*Y^3) * prod Q_j, hence smoothness of the curve.

    Checks, with an explicit witness on failure:
      * L != 0 and each pair is non-degenerate (b*c != 0 keeps Q_j squarefree);
      * pairwise projective distinctness b_j*c_k != b_k*c_j;
      * pairwise nonzero resultants between all factors (cubic included).
    """
    if L == 0:
        return False, "L = 0"
    Pi = params.P_iota
    factors: list[Sequence[int]] = [(1, 0, 0, Pi)]
    for idx, (b, c) in enumerate(pairs):
        if b == 0 or c == 0:
            return False, f"pair {idx} = ({b}, {c}) gives a degenerate quadratic"
        factors.append((b * b, b * c, c * c))
    for j in range(len(pairs)):
        for k in range(j + 1, len(pairs)):
            bj, cj = pairs[j]
            bk, ck = pairs[k]
            if bj * ck == bk * cj:
                return False, f"pairs {j} and {k} are projectively equal"
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if resultant(factors[i], factors[j]) == 0:
                return False, f"factors {i} and {j} share a projective root"
    return True, None


# ---------------------------------------------------------------------------
# rendering and serialization


def _fmt_quadratic(b: int, c: int) -> str:
    b2, bc, c2 = b * b, b * c, c * c

    def coef(v: int) -> str:
        return "" if v == 1 else str(v)

    mid = f"+{coef(bc)}XY" if bc > 0 else f"-{coef(-bc)}XY"
    if bc == 1:
        mid = "+XY"
    if bc == -1:
        mid = "-XY"
    return f"({coef(b2)}X^2{mid}+{coef(c2)}Y^2)"


def to_latex(form: TernaryForm) -> str:
    """Factored display like (X^3+7Y^3)(X^2+4XY+16Y^2)... = 262193^4Z^7."""
    prov = form.provenance
    if prov is None:
        raise ValueError("factored rendering needs provenance")
    Pi = prov.P**prov.iota
    parts = [f"(X^3+{Pi}Y^3)"]
    parts += [_fmt_quadratic(b, c) for b, c in prov.pairs]
    rhs = f"{prov.l}^{prov.m}Z^{form.degree}" if prov.m != 1 else f"{prov.l}Z^{form.degree}"
    return "".join(parts) + " = " + rhs


def to_json_dict(form: TernaryForm) -> dict:
    d: dict = {
        "degree": form.degree,
        "terms": [{"i": i, "j": j, "k": k, "coef": coef} for i, j, k, coef in form.terms],
    }
    if form.provenance is not None:
        p = form.provenance
        d["provenance"] = {
            "P": p.P,
            "iota": p.iota,
            "pairs": [[b, c] for b, c in p.pairs],
            "l": p.l,
            "m": p.m,
        }
    return d


def from_json_dict(d: dict) -> TernaryForm:
    prov = None
    if "provenance" in d:
        q = d["provenance"]
        prov = FormProvenance(
            P=q["P"], iota=q["iota"], pairs=tuple((b, c) for b, c in q["pairs"]), l=q["l"], m=q["m"]
        )
    terms = tuple((t["i"], t["j"], t["k"], t["coef"]) for t in d["terms"])
    return TernaryForm(degree=d["degree"], terms=terms, provenance=prov)


def to_json(form: TernaryForm) -> str:
    return json.dumps(to_json_dict(form), sort_keys=True)


def from_json(text: str) -> TernaryForm:
    return from_json_dict(json.loads(text))
