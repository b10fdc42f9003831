"""Hypothesis strategies for small polynomials and coefficients."""

from fractions import Fraction

from hypothesis import strategies as st

from multiloop.algebra import Coefficient, Polynomial, Ring

RING = Ring(("u", "x", "y"), laurent={"u"})
RING_SQRT = Ring(("u", "x", "y"), laurent={"u"}, d=2)

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))


def coefficients(d=None):
    if d is None:
        return rationals
    return st.builds(lambda a, b: Coefficient.make(a, b, d), rationals, rationals)


def monomials(ring):
    lo = [-2 if n in ring.laurent else 0 for n in ring.names]
    return st.tuples(*[st.integers(min_value=l, max_value=3) for l in lo])


def polynomials(ring=RING, max_terms=4):
    return st.dictionaries(monomials(ring), coefficients(ring.d), max_size=max_terms).map(
        lambda terms: Polynomial(ring, terms))
