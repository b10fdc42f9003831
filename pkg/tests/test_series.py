import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from multiloop.monopole import closed_form_gl2, closed_form_gl3, slodowy_closed_form
from multiloop.series import (
    ClosedForm,
    TruncatedSeries,
    closed_form_equal,
    expand_closed_form,
    series_equal,
    sum_closed_forms,
)

T = sympy.Symbol("t")


def sympy_expand(cf: ClosedForm, cap: int) -> list:
    """Independent expansion through sympy's series."""
    num = sum(c * T ** k for k, c in enumerate(cf.numerator))
    den = sympy.Mul(*[1 - T ** k for k in cf.denominator])
    s = sympy.series(num / den, T, 0, cap + 1).removeO()
    return [int(s.coeff(T, k)) for k in range(cap + 1)]


def test_geometric():
    assert list(expand_closed_form(ClosedForm((1,), (2,)), 6).coefficients) == [1, 0, 1, 0, 1, 0, 1]


def test_telescoping():
    cf = ClosedForm.from_factors([4], [2, 2])
    assert list(expand_closed_form(cf, 6).coefficients) == [1, 0, 2, 0, 2, 0, 2]


def test_gl2_r2_low_degrees():
    # value checked against the monopole enumeration in test_monopole
    assert list(expand_closed_form(closed_form_gl2(2), 3).coefficients) == [1, 0, 3, 2]


@pytest.mark.parametrize("cf", [closed_form_gl2(2), closed_form_gl2(4), closed_form_gl3(3), slodowy_closed_form(3)])
def test_expansion_matches_sympy(cf):
    assert list(expand_closed_form(cf, 14).coefficients) == sympy_expand(cf, 14)


def test_series_equal_identical_and_first_mismatch():
    a = TruncatedSeries(3, (1, 2, 3, 4))
    assert series_equal(a, a)
    cmp = series_equal(a, TruncatedSeries(3, (0, 2, 3, 4)))
    assert not cmp and cmp.degree == 0


def test_series_cap_mismatch():
    with pytest.raises(ValueError):
        series_equal(TruncatedSeries(1, (1, 0)), TruncatedSeries(2, (1, 0, 0)))


def test_series_length_invariant():
    with pytest.raises(ValueError):
        TruncatedSeries(3, (1, 2))


def test_slodowy_comparison_first_mismatch():
    cmp = series_equal(expand_closed_form(closed_form_gl3(3), 20), expand_closed_form(slodowy_closed_form(3), 20))
    assert not cmp
    assert (cmp.degree, cmp.left, cmp.right) == (2, 1, 3)


def test_closed_form_equality():
    a = ClosedForm.from_factors([4], [2, 2])
    b = ClosedForm((1, 0, 1), (2,))
    assert closed_form_equal(a, b)
    h = closed_form_gl2(3)
    changed = ClosedForm(h.numerator, h.denominator[:-1] + (h.denominator[-1] + 1,))
    assert not closed_form_equal(h, changed)


def test_negative_denominator_rejected():
    with pytest.raises(ValueError):
        ClosedForm((1,), (0,))


small_cf = st.builds(
    ClosedForm,
    st.lists(st.integers(-3, 3), min_size=1, max_size=5).map(tuple),
    st.lists(st.integers(1, 4), max_size=3).map(tuple),
)


@given(small_cf, small_cf)
def test_sum_expands_to_sum(a, b):
    cap = 12
    lhs = expand_closed_form(sum_closed_forms([a, b]), cap)
    assert lhs == expand_closed_form(a, cap) + expand_closed_form(b, cap)


@given(small_cf, small_cf)
def test_product_expands_to_product(a, b):
    cap = 12
    assert expand_closed_form(a * b, cap) == expand_closed_form(a, cap) * expand_closed_form(b, cap)


@given(small_cf)
def test_closed_form_equal_reflexive_under_rescaling(a):
    # multiply top and bottom by (1 - t^3)
    b = ClosedForm.from_factors([3], a.denominator + (3,), extra=a.numerator)
    assert closed_form_equal(a, b)
