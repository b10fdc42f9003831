"""Cross-checks against sympy on the slice side."""

from fractions import Fraction

import pytest
import sympy as sp

from multiloop.slice import SliceContext, slice_relation, solve_trace_conditions
from sympy_oracle import X1, X2, Y1, Y2, W, alphas, relation


@pytest.mark.parametrize("r", [2, 3, 4])
def test_alphas_match_sympy(r):
    want, _ = alphas(r)
    got = solve_trace_conditions(SliceContext(r)).alphas
    assert [Fraction(int(a.p), int(a.q)) for a in want] == list(got)


@pytest.mark.parametrize("r", [2, 3])
def test_relation_matches_sympy(r):
    want = relation(r)
    got = slice_relation(SliceContext(r))
    syms = dict(zip(("x1", "x2", "y1", "y2", "w"), (X1, X2, Y1, Y2, W)))
    as_sympy = sum(sp.Rational(str(c)) * sp.Mul(*[syms[n] ** k for n, k in zip(got.ring.names, m)])
                   for m, c in got.terms.items())
    assert sp.expand(as_sympy - want) == 0
