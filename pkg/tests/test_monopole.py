from itertools import product

import pytest

from multiloop.monopole import (
    MAX_ENUMERATION_CAP,
    GaugeSpec,
    check_regions,
    ci_diagnostic,
    classical_factor,
    closed_form_gl2,
    closed_form_gl3,
    covers_lattice,
    monopole_degree,
    truncated_hilbert,
)
from multiloop.series import ClosedForm, closed_form_equal, expand_closed_form, series_equal, sum_closed_forms
from multiloop.monopole import regions_gl2, regions_gl3


def brute_hilbert(n: int, r: int, m: int, cap: int) -> list:
    """Monopole sum written out directly, independent of the package enumerator."""

    def inv_series(exps):
        s = [1] + [0] * cap
        for e in exps:
            for k in range(e, cap + 1):
                s[k] += s[k - e]
        return s

    out = [0] * (cap + 1)
    for lam in product(range(-cap, cap + 1), repeat=n):
        if any(a < b for a, b in zip(lam, lam[1:])):
            continue
        deg = m * sum(abs(a) for a in lam)
        deg += (2 * r - 2) * sum(abs(lam[i] - lam[j]) for i in range(n) for j in range(i + 1, n))
        if deg > cap:
            continue
        # stabilizer: product over blocks of equal entries of prod_{i<=size} 1/(1-t^{2i})
        exps = []
        i = 0
        while i < n:
            j = i
            while j < n and lam[j] == lam[i]:
                j += 1
            exps += [2 * k for k in range(1, j - i + 1)]
            i = j
        p = inv_series(exps)
        for k in range(deg, cap + 1):
            out[k] += p[k - deg]
    return out


def test_degree_examples():
    assert monopole_degree((0, 0), GaugeSpec(2, 3)) == 0
    for r in range(1, 6):
        assert monopole_degree((1, 0), GaugeSpec(2, r)) == 2 * r - 1
    for n in (1, 2, -3):
        assert monopole_degree((n, n), GaugeSpec(2, 4)) == 2 * abs(n)


def test_degree_rejects_non_dominant():
    with pytest.raises(ValueError):
        monopole_degree((0, 1), GaugeSpec(2, 2))


def test_classical_factors():
    assert closed_form_equal(classical_factor((3, 1)), ClosedForm((1,), (2, 2)))
    assert closed_form_equal(classical_factor((2, 2)), ClosedForm((1,), (2, 4)))
    assert closed_form_equal(classical_factor((0, 0, 0)), ClosedForm((1,), (2, 4, 6)))
    assert closed_form_equal(classical_factor((1, 0, 0)), ClosedForm((1,), (2, 2, 4)))


def test_closed_form_transcriptions():
    assert closed_form_equal(closed_form_gl2(2), ClosedForm.from_factors([8], [2, 2, 2, 3, 3]))
    cf = closed_form_gl3(3)
    want = ClosedForm.from_factors([12], [2, 3, 3, 4, 9, 9, 10], extra=[1] + [0] * 9 + [1, 2, 1] + [0] * 9 + [1])
    assert closed_form_equal(cf, want)


@pytest.mark.parametrize("n,r,cap", [(2, 2, 16), (2, 3, 16), (3, 2, 12), (3, 3, 12)])
def test_enumeration_matches_brute_force(n, r, cap):
    assert list(truncated_hilbert(GaugeSpec(n, r), cap).coefficients) == brute_hilbert(n, r, 1, cap)


def test_framing_two_matches_brute_force():
    assert list(truncated_hilbert(GaugeSpec(2, 2, framing=2), 12).coefficients) == brute_hilbert(2, 2, 2, 12)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_gl2_closed_form(r):
    got = truncated_hilbert(GaugeSpec(2, r), 40)
    assert series_equal(got, expand_closed_form(closed_form_gl2(r), 40))
    assert got[0] == 1 and got[2] == 3
    assert all(c >= 0 for c in got.coefficients)


@pytest.mark.parametrize("r", [2, 3])
def test_gl3_closed_form(r):
    got = truncated_hilbert(GaugeSpec(3, r), 30)
    assert series_equal(got, expand_closed_form(closed_form_gl3(r), 30))


def test_low_degree_value():
    assert list(truncated_hilbert(GaugeSpec(2, 2), 3).coefficients) == [1, 0, 3, 2]


def test_cap_bound():
    with pytest.raises(ValueError):
        truncated_hilbert(GaugeSpec(2, 2), MAX_ENUMERATION_CAP + 1)


@pytest.mark.parametrize("spec", [GaugeSpec(2, 2), GaugeSpec(2, 4), GaugeSpec(3, 2), GaugeSpec(3, 3)])
def test_regions(spec):
    assert covers_lattice(spec)
    results, total = check_regions(spec, 16)
    assert all(res.enumerated_matches for res in results), results
    assert total


def test_region_counts():
    assert len(regions_gl2(3)) == 5
    assert len(regions_gl3(3)) == 13


def test_gl3_region_sum_is_closed_form():
    for r in (2, 3):
        total = sum_closed_forms(reg.total for reg in regions_gl3(r))
        assert closed_form_equal(total, closed_form_gl3(r))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_ci_success_for_gl2(r):
    rep = ci_diagnostic(closed_form_gl2(r))
    assert rep.complete_intersection_shape
    assert rep.numerator_exponents == (4 * r,)


@pytest.mark.parametrize("r", [2, 3])
def test_ci_obstruction_for_gl3(r):
    rep = ci_diagnostic(closed_form_gl3(r))
    assert not rep.complete_intersection_shape
    assert rep.obstruction_coefficient == 2
    assert rep.obstruction_degree == 4 * r - 1


def test_ci_trivial():
    rep = ci_diagnostic(ClosedForm((1,), (1,)))
    assert rep.complete_intersection_shape and rep.numerator_exponents == ()


def test_rank_bounds():
    with pytest.raises(ValueError):
        GaugeSpec(4, 2)
