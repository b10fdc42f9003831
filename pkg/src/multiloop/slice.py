"""The sp(2r) side: sl2-triple, symplectic form, slice matrix and its determinants.

Matrices are 2r x 2r with a (2r-2)-block carrying the Jordan block of e and a
2 x 2 corner block. The slice matrix A involves c = 1/sqrt(2 (2r-3)!), so the
ring carries the coefficient extension Q(sqrt(d)) with d = 2 (2r-3)!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial, prod

from .algebra import AlgebraError, Coefficient, NotDivisible, Polynomial, Ring, exact_divide
from .matrix import MatrixError, PolyMatrix, commutator, det_fraction_free
from .relations import (
    abstract_ring,
    cubic_part,
    discriminant,
    flavored_det_b,
    flavored_relation_polynomial,
    grading,
)


class IdentityError(AlgebraError):
    """An identity that should hold exactly does not; ``witness`` is the nonzero difference."""

    def __init__(self, name: str, witness):
        super().__init__(f"{name} fails; witness: {witness}")
        self.name = name
        self.witness = witness


def _require_rank(r: int):
    if r < 2:
        raise ValueError(f"slice constructions need r >= 2, got {r}")


@lru_cache(maxsize=None)
def slice_ring(r: int) -> Ring:
    _require_rank(r)
    names = ("x1", "y1", "x2", "y2", "w") + tuple(f"b{i}" for i in range(1, r)) + tuple(
        f"z{i}" for i in range(1, r + 1))
    return Ring(names, d=2 * factorial(2 * r - 3))


@dataclass(frozen=True)
class SliceContext:
    r: int

    def __post_init__(self):
        _require_rank(self.r)

    @cached_property
    def ring(self) -> Ring:
        return slice_ring(self.r)

    @property
    def n(self) -> int:
        return 2 * self.r

    @cached_property
    def c(self) -> Coefficient:
        """1/sqrt(d) = sqrt(d)/d."""
        d = self.ring.d
        return Coefficient(0, Fraction(1) / d, d)

    @cached_property
    def D(self) -> Polynomial:
        return discriminant(self.ring)

    def var(self, name: str) -> Polynomial:
        return self.ring.var(name)

    @property
    def b_names(self) -> tuple:
        return tuple(f"b{i}" for i in range(1, self.r))

    @property
    def z_names(self) -> tuple:
        return tuple(f"z{i}" for i in range(1, self.r + 1))


def build_e(r: int, ring: Ring | None = None) -> PolyMatrix:
    """Superdiagonal (1, 2, ..., 2r-3, 0, 0)."""
    _require_rank(r)
    ring = ring or slice_ring(r)
    return PolyMatrix.from_entries(ring, 2 * r, {(i - 1, i): i for i in range(1, 2 * r - 2)})


def build_f(r: int, ring: Ring | None = None) -> PolyMatrix:
    """Subdiagonal (2r-3, 2r-4, ..., 1, 0, 0)."""
    _require_rank(r)
    ring = ring or slice_ring(r)
    return PolyMatrix.from_entries(ring, 2 * r, {(i, i - 1): 2 * r - 2 - i for i in range(1, 2 * r - 2)})


def build_h(r: int, ring: Ring | None = None) -> PolyMatrix:
    """Diagonal (2r-3, 2r-5, ..., 3-2r, 0, 0)."""
    _require_rank(r)
    ring = ring or slice_ring(r)
    return PolyMatrix.from_entries(ring, 2 * r, {(i, i): 2 * r - 3 - 2 * i for i in range(2 * r - 2)})


def omega_antidiagonal(r: int, row: int) -> Fraction:
    """Entry of the (2r-2)-block of Omega in 1-based ``row`` (at column 2r-1-row)."""
    return Fraction((-1) ** row, comb(2 * r - 3, 2 * r - 2 - row))


def build_omega(r: int, ring: Ring | None = None) -> PolyMatrix:
    _require_rank(r)
    ring = ring or slice_ring(r)
    n = 2 * r
    entries = {(i - 1, 2 * r - 2 - i): omega_antidiagonal(r, i) for i in range(1, 2 * r - 1)}
    entries[(n - 2, n - 1)] = -1
    entries[(n - 1, n - 2)] = 1
    om = PolyMatrix.from_entries(ring, n, entries)
    # anchors read off the displayed matrix: corners and the two middle signs
    anchors = {
        (0, 2 * r - 3): Fraction(-1, comb(2 * r - 3, 0)),
        (2 * r - 3, 0): Fraction(1, comb(2 * r - 3, 2 * r - 3)),
        (r - 2, r - 1): Fraction((-1) ** (r - 1), comb(2 * r - 3, r - 2)),
        (r - 1, r - 2): Fraction((-1) ** r, comb(2 * r - 3, r - 1)),
    }
    for (i, j), v in anchors.items():
        if om[i, j] != v:
            raise AssertionError(f"Omega anchor ({i + 1},{j + 1}) is {om[i, j]}, expected {v}")
    return om


def check_symplectic_membership(x: PolyMatrix, omega: PolyMatrix) -> bool:
    if x.shape != omega.shape or x.shape[0] != x.shape[1]:
        raise MatrixError(f"size mismatch {x.shape} vs {omega.shape}")
    return (omega * x + x.T * omega).is_zero()


def sl2_triple_identities(r: int) -> dict:
    """[h,e] = 2e, [h,f] = -2f, [e,f] = h, Omega^T = -Omega, and sp membership of e, f, h."""
    e, f, h, om = build_e(r), build_f(r), build_h(r), build_omega(r)
    return {
        "[h,e]=2e": (commutator(h, e) - e * 2).is_zero(),
        "[h,f]=-2f": (commutator(h, f) + f * 2).is_zero(),
        "[e,f]=h": (commutator(e, f) - h).is_zero(),
        "omega antisymmetric": (om.T + om).is_zero(),
        "e in sp": check_symplectic_membership(e, om),
        "f in sp": check_symplectic_membership(f, om),
        "h in sp": check_symplectic_membership(h, om),
    }


def build_A(ctx: SliceContext, b_values: dict | None = None) -> PolyMatrix:
    """The slice matrix e + (centralizer of f), b's free unless ``b_values`` given."""
    r, ring = ctx.r, ctx.ring
    x1, y1, x2, y2, w = ring.gens("x1", "y1", "x2", "y2", "w")
    c = ctx.c
    b_values = b_values or {}
    bs = [b_values.get(name, ring.var(name)) for name in ctx.b_names]
    m = 2 * r - 2
    entries = {(i - 1, i): i for i in range(1, m)}
    for i in range(1, m + 1):  # 1-based rows/cols of the (2r-2)-block
        for j in range(1, i):
            if (i - j) % 2:
                k = (i - j + 1) // 2
                entries[(i - 1, j - 1)] = bs[k - 1] * comb(m - j, 2 * k - 1)
    n = 2 * r
    entries[(m - 1, n - 2)] = y1 * c
    entries[(m - 1, n - 1)] = x1 * c
    entries[(n - 2, 0)] = -(x1 * c)
    entries[(n - 2, n - 2)] = w
    entries[(n - 2, n - 1)] = x2 * -2
    entries[(n - 1, 0)] = y1 * c
    entries[(n - 1, n - 2)] = y2 * 2
    entries[(n - 1, n - 1)] = -w
    return PolyMatrix.from_entries(ring, n, entries)


def build_B(ctx: SliceContext, A: PolyMatrix | None = None) -> PolyMatrix:
    A = build_A(ctx) if A is None else A
    m = 2 * ctx.r - 2
    return A.block(range(m), range(m))


def slice_structure(ctx: SliceContext) -> dict:
    """Omega A + A^T Omega = 0 and [f, A - e] = 0 as polynomial identities."""
    r = ctx.r
    A = build_A(ctx)
    om = build_omega(r, ctx.ring)
    e, f = build_e(r, ctx.ring), build_f(r, ctx.ring)
    return {
        "A in sp": check_symplectic_membership(A, om),
        "[f,A-e]=0": commutator(f, A - e).is_zero(),
    }


def odd_traces_vanish(ctx: SliceContext, A: PolyMatrix | None = None) -> bool:
    A = build_A(ctx) if A is None else A
    pw = A.powers(2 * ctx.r - 1)
    return all(pw[k].trace().is_zero() for k in range(1, 2 * ctx.r, 2))


@dataclass(frozen=True)
class TraceSolution:
    b_values: dict  # name -> Polynomial in the slice ring
    alphas: tuple  # b_k = alpha_k D^k (unflavored only; empty when flavored)
    flavored: bool


def power_sum_target(ctx: SliceContext, k: int) -> Polynomial:
    """tr A^{2k} for spectrum {+-z_i}: 2 sum z_i^{2k}."""
    acc = ctx.ring.zero
    for z in ctx.z_names:
        acc = acc + ctx.var(z) ** (2 * k)
    return acc * 2


def _solve_linear(name: str, expr: Polynomial) -> Polynomial:
    parts = expr.coefficients_in(name)
    if set(parts) - {0, 1}:
        raise IdentityError(f"trace equation linear in {name}", expr)
    lin = parts.get(1)
    if lin is None or lin.is_zero():
        raise IdentityError(f"nonzero coefficient of {name}", expr)
    const = parts.get(0, expr.ring.zero)
    try:
        return exact_divide(-const, lin)
    except NotDivisible as exc:
        raise IdentityError(f"solving for {name}", exc.remainder) from exc


def solve_trace_conditions(ctx: SliceContext, flavored: bool = False) -> TraceSolution:
    """Solve tr A^{2k} = target_k for b_k, k = 1..r-1, in order.

    Unflavored targets are 0 and each solution must be alpha_k D^k; flavored
    targets are 2 sum z_i^{2k}.
    """
    ring = ctx.ring
    solved: dict = {}
    alphas = []
    for k, name in enumerate(ctx.b_names, start=1):
        A = build_A(ctx, solved)
        tr = (A ** (2 * k)).trace()
        if flavored:
            tr = tr - power_sum_target(ctx, k)
        value = _solve_linear(name, tr)
        if not flavored:
            try:
                alpha = exact_divide(value, ctx.D ** k)
            except NotDivisible as exc:
                raise IdentityError(f"b{k} = alpha D^{k}", exc.remainder) from exc
            if not alpha.is_constant() or alpha.is_zero():
                raise IdentityError(f"alpha_{k} nonzero constant", alpha)
            alphas.append(alpha.constant_value())
        solved[name] = value
    # every trace condition holds with all b's in place
    A = build_A(ctx, solved)
    pw = A.powers(2 * ctx.r - 2)
    for k in range(1, ctx.r):
        resid = pw[2 * k].trace() - (power_sum_target(ctx, k) if flavored else ring.zero)
        if not resid.is_zero():
            raise IdentityError(f"tr A^{2 * k} after substitution", resid)
    return TraceSolution(solved, tuple(alphas), flavored)


def det_a_identity(ctx: SliceContext) -> Polynomial:
    """det A + D det B - (x1^2 y2 + x2 y1^2 + w x1 y1), with free b's; zero when the identity holds."""
    A = build_A(ctx)
    B = build_B(ctx, A)
    return det_fraction_free(A) + ctx.D * det_fraction_free(B) - cubic_part(ctx.ring)


def slice_relation(ctx: SliceContext, solution: TraceSolution | None = None) -> Polynomial:
    """det A on the nilpotent slice, as a polynomial in x1, x2, y1, y2, w.

    Verifies the free-b determinant identity, det B = D^(r-1) after
    substitution, det A = cubic - D^r, and vanishing of odd traces.
    """
    r = ctx.r
    resid = det_a_identity(ctx)
    if not resid.is_zero():
        raise IdentityError("det A = cubic - D det B", resid)
    if not odd_traces_vanish(ctx):
        raise IdentityError("odd traces vanish", "tr A^odd != 0")
    solution = solution or solve_trace_conditions(ctx)
    A = build_A(ctx, solution.b_values)
    det_b = det_fraction_free(build_B(ctx, A))
    if det_b != ctx.D ** (r - 1):
        raise IdentityError(f"det B = D^{r - 1}", det_b - ctx.D ** (r - 1))
    det_a = det_fraction_free(A)
    expected = cubic_part(ctx.ring) - ctx.D ** r
    if det_a != expected:
        raise IdentityError(f"det A = cubic - D^{r}", det_a - expected)
    return abstract_ring().embed(det_a)


def characteristic_polynomial(A: PolyMatrix, var: str = "lam") -> Polynomial:
    """det(lam I - A) in the ring extended by ``var``."""
    ring = A.ring.extend([var])
    lam = ring.var(var)
    n = A.shape[0]
    M = PolyMatrix.identity(ring, n) * lam - A.embed(ring)
    return det_fraction_free(M)


def flavored_slice_relation(ctx: SliceContext, check_charpoly: bool | None = None) -> Polynomial:
    """det A - (-1)^r z1^2...zr^2 after imposing the spectrum {+-z_i}.

    Verifies det B against the sigma-sum formula and the result against the
    Coulomb-side flavored relation; with ``check_charpoly`` (default for
    r <= 3) also checks det(lam - A) = prod(lam^2 - z_i^2) + relation.
    """
    r, ring = ctx.r, ctx.ring
    solution = solve_trace_conditions(ctx, flavored=True)
    A = build_A(ctx, solution.b_values)
    target = abstract_ring(r)
    det_b = target.embed(det_fraction_free(build_B(ctx, A)))
    want_b = flavored_det_b(r, target)
    if det_b != want_b:
        raise IdentityError("det B sigma-sum", det_b - want_b)
    z_prod = prod((ctx.var(z) ** 2 for z in ctx.z_names), start=ring.one)
    rel = det_fraction_free(A) - z_prod * (-1) ** r
    rel_abstract = target.embed(rel)
    want = flavored_relation_polynomial(r, target)
    if rel_abstract != want:
        raise IdentityError("det A - (-1)^r prod z^2 = flavored relation", rel_abstract - want)
    if check_charpoly is None:
        check_charpoly = r <= 3
    if check_charpoly:
        cp = characteristic_polynomial(A)
        lam = cp.ring.var("lam")
        spectral = prod((lam ** 2 - cp.ring.embed(ctx.var(z)) ** 2 for z in ctx.z_names), start=cp.ring.one)
        diff = cp - spectral - cp.ring.embed(rel)
        if not diff.is_zero():
            raise IdentityError("characteristic polynomial", diff)
    return rel_abstract


def relation_is_homogeneous(rel: Polynomial, r: int) -> bool:
    return rel.is_homogeneous(grading(r), 4 * r)
