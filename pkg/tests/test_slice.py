from fractions import Fraction

import pytest

from multiloop.algebra import Coefficient
from multiloop.matrix import PolyMatrix, det_cofactor, det_fraction_free
from multiloop.relations import abstract_ring, flavored_det_b, flavored_relation_polynomial, starlet_polynomial
from multiloop.slice import (
    IdentityError,
    SliceContext,
    build_A,
    build_B,
    build_e,
    build_h,
    build_omega,
    characteristic_polynomial,
    check_symplectic_membership,
    det_a_identity,
    flavored_slice_relation,
    odd_traces_vanish,
    relation_is_homogeneous,
    sl2_triple_identities,
    slice_relation,
    slice_structure,
    solve_trace_conditions,
)
from multiloop.coulomb import specialize_z

# frozen from an independent sympy trace solve, see scripts/alpha_table.py
ALPHAS = {
    2: (Fraction(-1),),
    3: (Fraction(-1, 10), Fraction(-91, 600)),
    4: (Fraction(-1, 35), Fraction(-23, 6300), Fraction(-1199, 154350)),
}


def test_r2_patterns():
    e, h = build_e(2), build_h(2)
    ring = e.ring
    assert [e[i, i + 1] for i in range(3)] == [1, 0, 0]
    assert h == PolyMatrix.from_entries(ring, 4, {(0, 0): 1, (1, 1): -1})


def test_r2_slice_matrix():
    ctx = SliceContext(2)
    A = build_A(ctx)
    x1, y1, x2, y2, w, b1 = ctx.ring.gens("x1", "y1", "x2", "y2", "w", "b1")
    c = ctx.c
    assert c * c == Fraction(1, 2)
    assert list(A.rows[1]) == [b1, 0, y1 * c, x1 * c]
    assert list(A.rows[2]) == [-(x1 * c), 0, w, -x2 * 2]
    assert list(A.rows[3]) == [y1 * c, 0, y2 * 2, -w]
    assert build_B(ctx) == PolyMatrix(ctx.ring, [[0, 1], [b1, 0]])


@pytest.mark.parametrize("r", range(2, 7))
def test_sl2_triple(r):
    assert all(sl2_triple_identities(r).values())


def test_identity_not_symplectic():
    om = build_omega(3)
    assert not check_symplectic_membership(PolyMatrix.identity(om.ring, 6), om)


def test_r_too_small():
    with pytest.raises(ValueError):
        build_e(1)
    with pytest.raises(ValueError):
        SliceContext(1)


def test_constant_c():
    for r in (2, 3, 4):
        ctx = SliceContext(r)
        from math import factorial
        assert ctx.c * ctx.c == Fraction(1, 2 * factorial(2 * r - 3))
        assert isinstance(ctx.c, Coefficient)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_slice_structure(r):
    ctx = SliceContext(r)
    assert all(slice_structure(ctx).values())
    assert odd_traces_vanish(ctx)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_det_a_identity_free_b(r):
    assert det_a_identity(SliceContext(r)).is_zero()


@pytest.mark.parametrize("r", [2, 3])
def test_bareiss_matches_cofactor_on_A(r):
    A = build_A(SliceContext(r))
    assert det_fraction_free(A) == det_cofactor(A)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_trace_solution(r):
    ctx = SliceContext(r)
    sol = solve_trace_conditions(ctx)
    assert sol.alphas == ALPHAS[r]
    for k, name in enumerate(ctx.b_names, start=1):
        assert sol.b_values[name] == ctx.D ** k * sol.alphas[k - 1]
    A = build_A(ctx, sol.b_values)
    pw = A.powers(2 * r)
    assert all(pw[k].trace().is_zero() for k in range(1, 2 * r))
    # tr A^{2r} is a multiple of det A, which only vanishes on the relation
    assert not pw[2 * r].trace().is_zero()


@pytest.mark.parametrize("r", [2, 3, 4])
def test_det_b_after_substitution(r):
    ctx = SliceContext(r)
    A = build_A(ctx, solve_trace_conditions(ctx).b_values)
    assert det_fraction_free(build_B(ctx, A)) == ctx.D ** (r - 1)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_slice_relation_is_starlet(r):
    rel = slice_relation(SliceContext(r))
    assert rel == -starlet_polynomial(r)
    assert relation_is_homogeneous(rel, r)


def test_slice_relation_r2_text():
    rel = slice_relation(SliceContext(2))
    want = abstract_ring().parse("x1^2*y2 + x1*y1*w - 16*x2^2*y2^2 + x2*y1^2 + 8*x2*y2*w^2 - w^4")
    assert rel == want


def test_wrong_alpha_is_caught():
    ctx = SliceContext(2)
    bad = {"b1": ctx.D * 2}
    A = build_A(ctx, bad)
    assert not (A * A).trace().is_zero()


@pytest.mark.parametrize("r", [2, 3, 4])
def test_flavored_slice_relation(r):
    ctx = SliceContext(r)
    rel = flavored_slice_relation(ctx, check_charpoly=r <= 3)
    assert rel == flavored_relation_polynomial(r)
    assert specialize_z(rel, abstract_ring()) == -starlet_polynomial(r)


def test_flavored_det_b_r2():
    ring = abstract_ring(2)
    D, z1, z2 = ring.parse("w^2 - 4*x2*y2"), ring.var("z1"), ring.var("z2")
    # D - sigma_1^2 + 2 sigma_2 = D - z1^2 - z2^2
    assert flavored_det_b(2, ring) == D - z1 * z1 - z2 * z2


def test_charpoly_r2():
    ctx = SliceContext(2)
    sol = solve_trace_conditions(ctx, flavored=True)
    A = build_A(ctx, sol.b_values)
    cp = characteristic_polynomial(A)
    ring = cp.ring
    lam, z1, z2 = ring.gens("lam", "z1", "z2")
    rel = ring.embed(det_fraction_free(A)) - z1 ** 2 * z2 ** 2
    assert cp == (lam ** 2 - z1 ** 2) * (lam ** 2 - z2 ** 2) + rel


def test_identity_error_carries_witness():
    err = IdentityError("demo", "x1 - 1")
    assert err.witness == "x1 - 1" and "demo" in str(err)
