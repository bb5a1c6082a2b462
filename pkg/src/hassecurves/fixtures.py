"""Classical counterexamples to the local-global principle, as fixtures.

Selmer's cubic 3X^3 + 4Y^3 = 5Z^3 and Fujiwara's quintic
(X^3 + 5Z^3)(X^2 + XY + Y^2) = 17Z^5 are everywhere locally soluble but
have no rational points.  They exercise the certificate machinery on
curves that do not come out of our own pipeline.
"""

from __future__ import annotations

from .forms import TernaryForm, make_form, sparse_mul


def selmer_curve() -> TernaryForm:
    return make_form(3, [(3, 0, 0, 3), (0, 3, 0, 4), (0, 0, 3, -5)])


def fujiwara_curve() -> TernaryForm:
    lhs = sparse_mul(
        {(3, 0, 0): 1, (0, 0, 3): 5},
        {(2, 0, 0): 1, (1, 1, 0): 1, (0, 2, 0): 1},
    )
    lhs[(0, 0, 5)] = lhs.get((0, 0, 5), 0) - 17
    return make_form(5, [(i, j, k, c) for (i, j, k), c in lhs.items()])
