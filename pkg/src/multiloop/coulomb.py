"""The Coulomb-branch side in etale coordinates.

Everything is computed in (u1, u2, v1, v2) with u's invertible and
w_i = u_i v_i, where the symplectic form is du1^dv1 + du2^dv2. Unflavored
generators are Laurent polynomials; the flavored x1, y1 carry one power of
the wall s = w1 - w2 = u1 v1 - u2 v2 in the denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import prod

from .algebra import (
    Coefficient,
    Localized,
    Polynomial,
    Ring,
    elementary_from_power_sums,
    substitute,
)
from .matrix import PolyMatrix, det_cofactor
from .relations import (
    GENERATORS,
    abstract_ring,
    flavored_relation_polynomial,
    grading,
    sigma_pair_sum,
    starlet_polynomial,
)

SIGN_MUTATIONS = ("x1", "x2", "y1", "y2")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: ``ok`` plus a witness on failure and any derived constants."""

    ok: bool
    witness: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class EtaleChart:
    r: int
    flavored: bool = False

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.flavored and self.r < 2:
            raise ValueError("flavored generators need r >= 2")

    @cached_property
    def ring(self) -> Ring:
        zs = tuple(f"z{i}" for i in range(1, self.r + 1)) if self.flavored else ()
        return Ring(("u1", "u2", "v1", "v2") + zs, laurent={"u1", "u2"})

    @cached_property
    def pivot(self) -> Polynomial:
        u1, u2, v1, v2 = self.ring.gens("u1", "u2", "v1", "v2")
        return u1 * v1 - u2 * v2

    def w(self, i: int) -> Polynomial:
        return self.ring.var(f"u{i}") * self.ring.var(f"v{i}")

    def localize(self, p) -> Localized:
        if isinstance(p, Localized):
            return p
        if not isinstance(p, Polynomial):
            p = self.ring.const(p)
        return Localized(p, self.pivot, 0)

    @property
    def z(self) -> list:
        return [self.ring.var(f"z{i}") for i in range(1, self.r + 1)] if self.flavored else []


@dataclass(frozen=True)
class GeneratorSet:
    x1: Localized
    x2: Localized
    y1: Localized
    y2: Localized
    w: Localized

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in GENERATORS}


def raw_generators(chart: EtaleChart) -> dict:
    """E1[1], E1[w], E2[1], F1[1], F1[w], F2[1], w1, w2 as Laurent polynomials."""
    R = chart.ring
    u1, u2 = R.gens("u1", "u2")
    w1, w2 = chart.w(1), chart.w(2)
    sign = (-1) ** chart.r
    wall = (w1 - w2) ** (chart.r - 1)
    return {
        "E1[1]": wall * (u1 - u2 * sign),
        "E1[w]": wall * (w1 * u1 - w2 * u2 * sign),
        "E2[1]": u1 * u2,
        "F1[1]": wall * (w1 * u1 ** -1 - w2 * u2 ** -1 * sign),
        "F1[w]": wall * (w1 ** 2 * u1 ** -1 - w2 ** 2 * u2 ** -1 * sign),
        "F2[1]": w1 * w2 * u1 ** -1 * u2 ** -1,
        "w1": w1,
        "w2": w2,
    }


def build_generators(chart: EtaleChart, mutation: str | None = None) -> GeneratorSet:
    """x1, x2, y1, y2, w; ``mutation`` flips the (-1)^r convention in one generator."""
    if mutation is not None and mutation not in SIGN_MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}; choose from {SIGN_MUTATIONS}")
    R, r, s = chart.ring, chart.r, chart.pivot
    u1, u2, v1, v2 = R.gens("u1", "u2", "v1", "v2")
    w1, w2 = chart.w(1), chart.w(2)

    def sign(name):
        return (-1) ** (r + (mutation == name))

    if not chart.flavored:
        raw = raw_generators(chart)
        wall = (w1 - w2) ** (r - 1)
        x1 = wall * (u1 - u2 * sign("x1"))
        y1 = wall * (w1 * u1 ** -1 - w2 * u2 ** -1 * sign("y1"))
        gens = dict(
            x1=x1 if mutation == "x1" else raw["E1[1]"],
            x2=raw["E2[1]"] * sign("x2"),
            y1=y1 if mutation == "y1" else raw["F1[1]"],
            y2=raw["F2[1]"] * sign("y2"),
            w=w1 + w2,
        )
        return GeneratorSet(**{k: chart.localize(v) for k, v in gens.items()})

    zs = chart.z
    # (w2 - w1)^{-1} = -s^{-1}; the mutation flips the second summand's sign
    flip_x = -1 if mutation == "x1" else 1
    flip_y = -1 if mutation == "y1" else 1
    num_x = u1 * prod((s - z for z in zs), start=R.one) - u2 * prod((-s - z for z in zs), start=R.one) * flip_x
    num_y = (w1 * u1 ** -1) * prod((s + z for z in zs), start=R.one) \
        - (w2 * u2 ** -1) * prod((-s + z for z in zs), start=R.one) * flip_y
    return GeneratorSet(
        x1=Localized(num_x, s, 1),
        x2=chart.localize(u1 * u2 * sign("x2")),
        y1=Localized(num_y, s, 1),
        y2=chart.localize(w1 * w2 * u1 ** -1 * u2 ** -1 * sign("y2")),
        w=chart.localize(w1 + w2),
    )


def generators_are_regular(gens: GeneratorSet) -> bool:
    return all(g.power == 0 for g in gens.as_dict().values())


def check_redundancy(chart: EtaleChart, flip_sign: bool = False, printed_sign: bool = False) -> Verdict:
    """The three identities expressing w1 w2, E1[w], F1[w] through the five generators.

    They hold as E1[w] = (w1 + w2) E1[1] + (-1)^r E2[1] F1[1] and likewise for
    F1[w]. ``printed_sign`` uses the opposite sign, as the identities are
    usually quoted, and fails; ``flip_sign`` is the negative control.
    """
    g = raw_generators(chart)
    sign = (-1) ** (chart.r + flip_sign + printed_sign)
    w = g["w1"] + g["w2"]
    identities = {
        "w1w2 = E2 F2": g["w1"] * g["w2"] - g["E2[1]"] * g["F2[1]"],
        "E1[w] = w E1 + (-1)^r E2 F1": g["E1[w]"] - (w * g["E1[1]"] + g["E2[1]"] * g["F1[1]"] * sign),
        "F1[w] = w F1 + (-1)^r F2 E1": g["F1[w]"] - (w * g["F1[1]"] + g["F2[1]"] * g["E1[1]"] * sign),
    }
    for name, resid in identities.items():
        if not resid.is_zero():
            return Verdict(False, f"{name}: {resid}")
    return Verdict(True)


def substitute_generators(p: Polynomial, gens: GeneratorSet, chart: EtaleChart) -> Localized:
    """Image of a polynomial in x1..w (and z's) under the generator map."""
    assignment = gens.as_dict()
    return substitute(p, assignment, chart.pivot)


def check_relation_starlet(chart: EtaleChart, exponent: int | None = None,
                           mutation: str | None = None) -> Verdict:
    """(w^2 - 4 x2 y2)^r - (x1^2 y2 + x2 y1^2 + w x1 y1) vanishes on the generators."""
    if chart.flavored:
        raise ValueError("use an unflavored chart")
    gens = build_generators(chart, mutation)
    rel = starlet_polynomial(chart.r, exponent)
    resid = substitute_generators(rel, gens, chart)
    if resid.is_zero():
        return Verdict(True)
    return Verdict(False, str(resid.reduce()))


# --- Poisson structure ----------------------------------------------------------

def poisson_bracket(f, g, chart: EtaleChart) -> Localized:
    """sum_i df/du_i dg/dv_i - df/dv_i dg/du_i."""
    f, g = chart.localize(f), chart.localize(g)
    acc = chart.localize(0)
    for i in (1, 2):
        u, v = f"u{i}", f"v{i}"
        acc = acc + f.derivative(u) * g.derivative(v) - f.derivative(v) * g.derivative(u)
    return acc


def poifo_table():
    """The tabulated brackets as (a, b, [(coeff, generator)]) with zero rhs as []."""
    return [
        ("x2", "y2", [(1, "w")]),
        ("w", "x2", [(-2, "x2")]),
        ("w", "y2", [(2, "y2")]),
        ("y2", "x1", [(1, "y1")]),
        ("y2", "y1", []),
        ("x2", "x1", []),
        ("x2", "y1", [(-1, "x1")]),
        ("w", "x1", [(-1, "x1")]),
        ("w", "y1", [(1, "y1")]),
    ]


def _combination(gens: dict, terms, chart: EtaleChart) -> Localized:
    acc = chart.localize(0)
    for c, name in terms:
        acc = acc + gens[name] * c
    return acc


def weighted_monomials(weights: dict, degree: int) -> list:
    """Exponent dicts over ``weights`` of the given weighted degree."""
    names = list(weights)
    out = []

    def rec(i, left, cur):
        if i == len(names):
            if left == 0:
                out.append(dict(cur))
            return
        wt = weights[names[i]]
        for k in range(left // wt + 1):
            cur[names[i]] = k
            rec(i + 1, left - k * wt, cur)
        cur.pop(names[i], None)

    rec(0, degree, {})
    return out


def _solve_exact(columns: list, target: dict) -> list | None:
    """Solve sum_j c_j columns[j] = target over Q; columns/target are {key: coeff} dicts."""
    keys = sorted(set(target).union(*columns))
    n = len(columns)
    rows = [[Fraction(col.get(k, 0)) for col in columns] + [Fraction(target.get(k, 0))] for k in keys]
    pivots = []
    row = 0
    for col in range(n):
        pr = next((i for i in range(row, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[row], rows[pr] = rows[pr], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [x * inv for x in rows[row]]
        for i in range(len(rows)):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    if any(all(x == 0 for x in r[:n]) and r[n] != 0 for r in rows):
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = rows[i][n]
    return sol


def express_in_generators(value: Localized, gens: GeneratorSet, chart: EtaleChart) -> Polynomial | None:
    """Write a regular function as a polynomial in x1..w of matching weighted degree.

    The weighted degree is read off from the (u, v)-degree of ``value``; unique
    below degree 4r, where the relation first appears.
    """
    value = value.reduce()
    if value.power:
        return None
    uv = {"u1": 1, "u2": 1, "v1": 1, "v2": 1}
    degs = value.numerator.weighted_degrees(uv)
    target_ring = abstract_ring()
    if not degs:
        return target_ring.zero
    if len(degs) != 1:
        return None
    (deg,) = degs
    weights = {k: v for k, v in grading(chart.r).items() if k in GENERATORS}
    monos = weighted_monomials(weights, deg)
    gd = gens.as_dict()
    columns = []
    for mono in monos:
        img = chart.localize(1)
        for name, k in mono.items():
            if k:
                img = img * gd[name] ** k
        columns.append(img.to_polynomial().terms)
    sol = _solve_exact(columns, value.numerator.terms)
    if sol is None:
        return None
    acc = target_ring.zero
    for c, mono in zip(sol, monos):
        if c:
            term = target_ring.const(c)
            for name, k in mono.items():
                if k:
                    term = term * target_ring.var(name) ** k
            acc = acc + term
    return acc


def check_poifo(chart: EtaleChart) -> Verdict:
    gens = build_generators(chart)
    g = gens.as_dict()
    for a, b, rhs in poifo_table():
        got = poisson_bracket(g[a], g[b], chart)
        want = _combination(g, rhs, chart)
        if got != want:
            return Verdict(False, f"{{{a},{b}}} - expected = {(got - want).reduce()}")
    x1y1 = poisson_bracket(g["x1"], g["y1"], chart)
    expr = express_in_generators(x1y1, gens, chart)
    details = {"{x1,y1}": str(expr) if expr is not None else str(x1y1)}
    return Verdict(True, details=details)


def bracket_x1_y1(r: int) -> Polynomial:
    """{x1, y1} expressed in the generators."""
    chart = EtaleChart(r)
    gens = build_generators(chart)
    expr = express_in_generators(poisson_bracket(gens.x1, gens.y1, chart), gens, chart)
    if expr is None:
        raise ArithmeticError("{x1,y1} is not a polynomial in the generators of its degree")
    return expr


def check_jacobi(chart: EtaleChart) -> Verdict:
    g = build_generators(chart).as_dict()
    brackets = {}

    def br(a, b):
        if (a, b) not in brackets:
            brackets[(a, b)] = poisson_bracket(g[a], g[b], chart)
        return brackets[(a, b)]

    count = 0
    for a, b, c in combinations(GENERATORS, 3):
        total = (poisson_bracket(g[a], br(b, c), chart) + poisson_bracket(g[b], br(c, a), chart)
                 + poisson_bracket(g[c], br(a, b), chart))
        count += 1
        if not total.is_zero():
            return Verdict(False, f"Jacobi({a},{b},{c}) = {total.reduce()}")
    return Verdict(True, details={"triples": count})


def check_sl2_grading(chart: EtaleChart) -> Verdict:
    """ad(-w) weights, the 2-dimensional module x1, y1, and the grading."""
    gens = build_generators(chart)
    g = gens.as_dict()
    h = -g["w"]
    expectations = [
        ("{-w,x2} = 2 x2", poisson_bracket(h, g["x2"], chart), g["x2"] * 2),
        ("{-w,y2} = -2 y2", poisson_bracket(h, g["y2"], chart), -g["y2"] * 2),
        ("-{x2,y2} = -w", -poisson_bracket(g["x2"], g["y2"], chart), h),
        ("{-w,x1} = x1", poisson_bracket(h, g["x1"], chart), g["x1"]),
        ("{-w,y1} = -y1", poisson_bracket(h, g["y1"], chart), -g["y1"]),
        ("{x2,x1} = 0", poisson_bracket(g["x2"], g["x1"], chart), chart.localize(0)),
        ("{y2,y1} = 0", poisson_bracket(g["y2"], g["y1"], chart), chart.localize(0)),
    ]
    for name, got, want in expectations:
        if got != want:
            return Verdict(False, f"{name}: difference {(got - want).reduce()}")
    # e raises y1 to a nonzero multiple of x1, f lowers x1 to y1: irreducible
    if poisson_bracket(g["x2"], g["y1"], chart).is_zero() or poisson_bracket(g["y2"], g["x1"], chart).is_zero():
        return Verdict(False, "x1, y1 do not span an irreducible module")
    rel = starlet_polynomial(chart.r)
    if not rel.is_homogeneous(grading(chart.r), 4 * chart.r):
        return Verdict(False, f"relation not homogeneous of degree {4 * chart.r}: {sorted(rel.weighted_degrees(grading(chart.r)))}")
    uv = {"u1": 1, "u2": 1, "v1": 1, "v2": 1}
    wts = grading(chart.r)
    for name, val in g.items():
        if not val.numerator.is_homogeneous(uv, wts[name]):
            return Verdict(False, f"{name} does not scale with weight {wts[name]}")
    return Verdict(True, details={"degree": 4 * chart.r})


# --- matrix form and SL(2) --------------------------------------------------------

HANANY_RING = abstract_ring(0, d=2)


def stated_hanany_scale(r: int) -> Coefficient:
    """4^r / sqrt(2), the rescaling of x1, y1 quoted with the matrix form."""
    return Coefficient(0, Fraction(4 ** r, 2), 2)


def hanany_matrices(ring: Ring = HANANY_RING):
    x1, x2, y1, y2, w = ring.gens(*GENERATORS)
    half = Fraction(1, 2)
    N = PolyMatrix(ring, [[-x2, w * half], [w * half, -y2]])
    omega = PolyMatrix(ring, [[0, -1], [1, 0]])
    A = PolyMatrix(ring, [[x1], [y1]])
    return N, omega, A


def hanany_expression(r: int, N: PolyMatrix, omega: PolyMatrix, A: PolyMatrix) -> Polynomial:
    """tr((N Omega)^{2r}) - A^T Omega N Omega A."""
    return ((N * omega) ** (2 * r)).trace() - (A.T * omega * N * omega * A)[0, 0]


def _proportionality(h: Polynomial, p: Polynomial):
    """Return (constant, residual) with residual = h - constant * p."""
    m, c = p.leading_term()
    k = h.terms.get(m, 0)
    if not k:
        return 0, h
    k = k * (c.inverse() if isinstance(c, Coefficient) else Fraction(1) / c)
    return k, h - p.scale(k)


def check_hanany_form(r: int, scale=None, side: str = "matrix") -> Verdict:
    """Is tr((N Omega)^{2r}) - A^T Omega N Omega A a nonzero multiple of the relation
    once x1, y1 are multiplied by ``scale`` (default: the stated 4^r/sqrt(2))?

    ``side`` says where the rescaling is applied: to the matrix expression
    or to the relation.
    """
    if side not in ("matrix", "relation"):
        raise ValueError("side must be 'matrix' or 'relation'")
    ring = HANANY_RING
    scale = stated_hanany_scale(r) if scale is None else scale
    h = hanany_expression(r, *hanany_matrices(ring))
    p = starlet_polynomial(r, ring=ring)
    x1, y1 = ring.gens("x1", "y1")
    rescale = {"x1": x1 * scale, "y1": y1 * scale}
    if side == "matrix":
        h = h.subs(rescale)
    else:
        p = p.subs(rescale)
    k, resid = _proportionality(h, p)
    details = {"scale": str(scale), "side": side}
    if k and resid.is_zero():
        details["constant"] = str(k)
        return Verdict(True, details=details)
    return Verdict(False, f"{resid}", details)


def consistent_hanany_scale_squared(r: int) -> Fraction:
    """The k^2 for which x1 -> k x1, y1 -> k y1 makes the matrix form proportional to the relation.

    Read off from the expression itself: its x1, y1-free part is a D^r,
    its quadratic part is -(x1^2 y2 + x2 y1^2 + w x1 y1), so k^2 = a.
    """
    ring = HANANY_RING
    h = hanany_expression(r, *hanany_matrices(ring))
    w_top = ring.var("w") ** (2 * r)
    a = h.terms[next(iter(w_top.terms))]
    return Fraction(a)


def consistent_hanany_scale(r: int) -> Coefficient:
    """sqrt(2) / 2^r, whose square is ``consistent_hanany_scale_squared``."""
    return Coefficient(0, Fraction(1, 2 ** r), 2)


def check_sl2_action_invariance(r: int, S=None) -> Verdict:
    """H(S N S^T, S A) = H(N, A) for S in SL(2).

    With ``S`` None, S = [[a, b], [c, (1 + b c)/a]] over the localization at a.
    """
    if S is None:
        ring = Ring(GENERATORS + ("sa", "sb", "sc"), laurent={"sa"})
        a, b, c = ring.gens("sa", "sb", "sc")
        S = PolyMatrix(ring, [[a, b], [c, (ring.one + b * c) * a ** -1]])
    else:
        ring = abstract_ring()
        S = PolyMatrix(ring, S)
    if det_cofactor(S) != ring.one:
        return Verdict(False, f"det S = {det_cofactor(S)}")
    N, omega, A = hanany_matrices(ring)
    before = hanany_expression(r, N, omega, A)
    after = hanany_expression(r, S * N * S.T, omega, S * A)
    diff = after - before
    if diff.is_zero():
        return Verdict(True)
    return Verdict(False, str(diff))


# --- flavor ------------------------------------------------------------------------

def check_relation_flavored(chart: EtaleChart, mutation: str | None = None,
                            cross_check_slice: bool = True) -> Verdict:
    """The flavored relation vanishes on the flavored generators and matches the slice side."""
    if not chart.flavored:
        raise ValueError("use a flavored chart")
    r = chart.r
    gens = build_generators(chart, mutation)
    rel = flavored_relation_polynomial(r)
    resid = substitute_generators(rel, gens, chart)
    if not resid.is_zero():
        return Verdict(False, str(resid.reduce()))
    if cross_check_slice:
        from .slice import IdentityError, SliceContext, flavored_slice_relation
        try:
            other = flavored_slice_relation(SliceContext(r))
        except IdentityError as exc:
            return Verdict(False, f"slice side: {exc}")
        if other != rel:
            return Verdict(False, f"slice relation differs by {other - rel}")
    return Verdict(True)


def specialize_z(p: Polynomial, ring: Ring) -> Polynomial:
    """Set every z_i to zero and move to ``ring``."""
    zero = {n: 0 for n in p.ring.names if n.startswith("z")}
    return ring.embed(p.subs(zero))


def check_sigma_parity(r: int, k: int) -> Verdict:
    """Every z-exponent in sum_{m+n=2k} (-1)^(mn) sigma_m sigma_n is even."""
    if not 0 <= k <= r:
        raise ValueError("need 0 <= k <= r")
    poly = sigma_pair_sum(r, k)
    for m in poly.terms:
        if any(e % 2 for e in m):
            bad = {n: e for n, e in zip(poly.ring.names, m) if e}
            return Verdict(False, f"odd exponent in monomial {bad}")
    return Verdict(True, details={"sum": str(poly)})


def sigmas_via_newton(r: int) -> list:
    """sigma_0..sigma_r of z1..zr from power sums by Newton's identities."""
    ring = abstract_ring(r)
    zs = [ring.var(f"z{i}") for i in range(1, r + 1)]
    power_sums = [sum((z ** k for z in zs[1:]), start=zs[0] ** k) for k in range(1, r + 1)]
    return elementary_from_power_sums(power_sums)
