"""Monopole-formula Hilbert series for GL(2) and GL(3) with r adjoint loops.

The matter representation is gl(n)^r + (C^n)^m. The series is enumerated
over dominant coweights in the box |n_i| <= D, which contains every
coweight of degree <= D because the degree is at least sum |n_i|.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable

from .series import (
    ClosedForm,
    TruncatedSeries,
    closed_form_equal,
    expand_closed_form,
    poly_div_plus_binomial,
    poly_divmod_binomial,
    sum_closed_forms,
)

MAX_ENUMERATION_CAP = 200


@dataclass(frozen=True)
class GaugeSpec:
    rank: int
    loops: int
    framing: int = 1

    def __post_init__(self):
        if self.rank not in (2, 3):
            raise ValueError(f"rank must be 2 or 3, got {self.rank}")
        if self.loops < 1 or self.framing < 1:
            raise ValueError("loops and framing must be positive")

    def weights(self) -> Counter:
        """Weight multiset of gl(n)^r + (C^n)^m as a Counter of tuples."""
        n = self.rank
        out: Counter = Counter()
        for i in range(n):
            e = tuple(int(j == i) for j in range(n))
            out[e] += self.framing
        for i, j in product(range(n), repeat=2):
            if i != j:
                root = tuple((k == i) - (k == j) for k in range(n))
                out[root] += self.loops
        out[(0,) * n] += n * self.loops
        return out

    def positive_roots(self):
        n = self.rank
        return [tuple((k == i) - (k == j) for k in range(n)) for i, j in combinations(range(n), 2)]


def is_dominant(coweight) -> bool:
    return all(a >= b for a, b in zip(coweight, coweight[1:]))


def _pair(chi, lam) -> int:
    return sum(k * n for k, n in zip(chi, lam))


def monopole_degree(coweight, spec: GaugeSpec) -> int:
    if len(coweight) != spec.rank:
        raise ValueError(f"coweight {coweight} has wrong length for rank {spec.rank}")
    if not is_dominant(coweight):
        raise ValueError(f"coweight {coweight} is not dominant")
    matter = sum(m * abs(_pair(chi, coweight)) for chi, m in spec.weights().items())
    vector = sum(abs(_pair(a, coweight)) for a in spec.positive_roots())
    return matter - 2 * vector


def stabilizer_blocks(coweight) -> list:
    """Sizes of the runs of equal entries (the Levi GL(k_1) x GL(k_2) x ...)."""
    blocks = []
    prev = None
    for x in coweight:
        if blocks and x == prev:
            blocks[-1] += 1
        else:
            blocks.append(1)
        prev = x
    return blocks


def classical_factor(coweight, rank: int | None = None) -> ClosedForm:
    if rank is not None and len(coweight) != rank:
        raise ValueError("coweight length does not match rank")
    if not is_dominant(coweight):
        raise ValueError(f"coweight {coweight} is not dominant")
    den = [2 * i for k in stabilizer_blocks(coweight) for i in range(1, k + 1)]
    return ClosedForm((1,), tuple(den))


def dominant_coweights(rank: int, bound: int):
    """All dominant coweights with every |n_i| <= bound."""
    def rec(prefix, hi, left):
        if left == 0:
            yield tuple(prefix)
            return
        for x in range(hi, -bound - 1, -1):
            yield from rec(prefix + [x], x, left - 1)

    yield from rec([], bound, rank)


def truncated_hilbert(spec: GaugeSpec, cap: int, region: Callable | None = None) -> TruncatedSeries:
    """Monopole formula truncated at t^cap, optionally restricted to a region of coweights."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if cap > MAX_ENUMERATION_CAP:
        raise ValueError(f"cap {cap} exceeds enumeration safety bound {MAX_ENUMERATION_CAP}")
    coeffs = [0] * (cap + 1)
    factor_cache: dict = {}
    for lam in dominant_coweights(spec.rank, cap):
        if region is not None and not region(lam):
            continue
        deg = monopole_degree(lam, spec)
        if deg > cap:
            continue
        key = tuple(stabilizer_blocks(lam))
        if key not in factor_cache:
            factor_cache[key] = expand_closed_form(classical_factor(lam), cap).coefficients
        f = factor_cache[key]
        for i in range(cap + 1 - deg):
            coeffs[deg + i] += f[i]
    return TruncatedSeries(cap, tuple(coeffs))


def closed_form_gl2(r: int) -> ClosedForm:
    """(1 - t^{4r}) / ((1-t^2)^3 (1-t^{2r-1})^2)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return ClosedForm.from_factors([4 * r], [2, 2, 2, 2 * r - 1, 2 * r - 1])


def closed_form_gl3(r: int) -> ClosedForm:
    if r < 1:
        raise ValueError("r must be >= 1")
    extra = [0] * (8 * r - 1)
    for k, c in ((0, 1), (4 * r - 2, 1), (4 * r - 1, 2), (4 * r, 1), (8 * r - 2, 1)):
        extra[k] += c
    return ClosedForm.from_factors([4 * r], [2, 3, 3, 4, 4 * r - 3, 4 * r - 3, 4 * r - 2], extra)


def slodowy_closed_form(r: int) -> ClosedForm:
    """Hilbert series of the slice S(2r-4,2,2), quoted for r = 3, 4."""
    if r == 3:
        return ClosedForm.from_factors([8, 12], [2, 2, 2] + [4] * 5)
    if r == 4:
        return ClosedForm.from_factors([12, 16], [2] + [4] * 5 + [6, 6])
    raise ValueError("tabulated only for r = 3, 4")


# --- per-region decompositions ------------------------------------------------

@dataclass(frozen=True)
class Region:
    name: str
    predicate: Callable = field(compare=False)
    summand: ClosedForm  # the lattice sum over the region, without the classical factor
    classical: ClosedForm

    @property
    def total(self) -> ClosedForm:
        return self.summand * self.classical


def regions_gl2(r: int) -> list:
    a = 2 * r - 1
    p_free = ClosedForm((1,), (2, 2))
    p_eq = ClosedForm((1,), (2, 4))
    return [
        Region("n1=n2>=0", lambda l: l[0] == l[1] >= 0, ClosedForm((1,), (2,)), p_eq),
        Region("n1=n2<0", lambda l: l[0] == l[1] < 0, ClosedForm.monomial(2, (2,)), p_eq),
        Region("n1>n2>=0", lambda l: l[0] > l[1] >= 0, ClosedForm.monomial(a, (2, a)), p_free),
        Region("0>=n1>n2", lambda l: 0 >= l[0] > l[1], ClosedForm.monomial(a, (2, a)), p_free),
        Region("n1>0>n2", lambda l: l[0] > 0 > l[1], ClosedForm.monomial(2 * a, (a, a)), p_free),
    ]


def regions_gl3(r: int) -> list:
    a, b = 4 * r - 3, 4 * r - 2
    p_free = ClosedForm((1,), (2, 2, 2))
    p_pair = ClosedForm((1,), (2, 2, 4))
    p_eq = ClosedForm((1,), (2, 4, 6))
    free = lambda l: l[0] > l[1] > l[2]
    top = lambda l: l[0] == l[1] > l[2]
    bottom = lambda l: l[0] > l[1] == l[2]
    return [
        Region("n1=n2=n3>=0", lambda l: l[0] == l[1] == l[2] >= 0, ClosedForm((1,), (3,)), p_eq),
        Region("n1=n2=n3<0", lambda l: l[0] == l[1] == l[2] < 0, ClosedForm.monomial(3, (3,)), p_eq),
        Region("n1=n2>n3>=0", lambda l: top(l) and l[2] >= 0, ClosedForm.monomial(b, (3, b)), p_pair),
        Region("0>=n1=n2>n3", lambda l: top(l) and 0 >= l[0], ClosedForm.monomial(a, (3, a)), p_pair),
        Region("n1=n2>0>n3", lambda l: top(l) and l[0] > 0 > l[2], ClosedForm.monomial(a + b, (a, b)), p_pair),
        Region("n1>n2=n3>=0", lambda l: bottom(l) and l[2] >= 0, ClosedForm.monomial(a, (3, a)), p_pair),
        Region("0>=n1>n2=n3", lambda l: bottom(l) and 0 >= l[0], ClosedForm.monomial(b, (3, b)), p_pair),
        Region("n1>0>n2=n3", lambda l: bottom(l) and l[0] > 0 > l[2], ClosedForm.monomial(a + b, (a, b)), p_pair),
        Region("n1>n2>n3>=0", lambda l: free(l) and l[2] >= 0, ClosedForm.monomial(a + b, (3, a, b)), p_free),
        Region("0>=n1>n2>n3", lambda l: free(l) and 0 >= l[0], ClosedForm.monomial(a + b, (3, a, b)), p_free),
        Region("n1>n2>0>n3", lambda l: free(l) and l[1] > 0 > l[2], ClosedForm.monomial(2 * a + b, (a, a, b)), p_free),
        Region("n1>0>n2>n3", lambda l: free(l) and l[0] > 0 > l[1], ClosedForm.monomial(2 * a + b, (a, a, b)), p_free),
        Region("n1>n2=0>n3", lambda l: free(l) and l[1] == 0 and l[0] > 0 > l[2], ClosedForm.monomial(2 * a, (a, a)), p_free),
    ]


def regions_for(spec: GaugeSpec) -> list:
    if spec.framing != 1:
        raise ValueError("region decompositions are only stated for framing 1")
    return regions_gl2(spec.loops) if spec.rank == 2 else regions_gl3(spec.loops)


@dataclass
class RegionCheck:
    name: str
    enumerated_matches: bool
    mismatch_degree: int | None = None


def check_regions(spec: GaugeSpec, cap: int) -> tuple:
    """Enumerate each region separately against its closed form, and sum the closed forms.

    Returns (per-region results, whether the region totals sum to the closed form).
    """
    regions = regions_for(spec)
    results = []
    for reg in regions:
        got = truncated_hilbert(spec, cap, region=reg.predicate)
        want = expand_closed_form(reg.total, cap)
        mismatch = next((k for k in range(cap + 1) if got[k] != want[k]), None)
        results.append(RegionCheck(reg.name, mismatch is None, mismatch))
    closed = closed_form_gl2(spec.loops) if spec.rank == 2 else closed_form_gl3(spec.loops)
    total = sum_closed_forms(reg.total for reg in regions)
    return results, closed_form_equal(total, closed)


def covers_lattice(spec: GaugeSpec, bound: int = 6) -> bool:
    """Every dominant coweight in a small box lies in exactly one region."""
    regions = regions_for(spec)
    return all(sum(reg.predicate(l) for reg in regions) == 1 for l in dominant_coweights(spec.rank, bound))


# --- complete-intersection shape --------------------------------------------

@dataclass(frozen=True)
class CIReport:
    complete_intersection_shape: bool
    numerator_exponents: tuple
    denominator_exponents: tuple
    residual: tuple = (1,)
    obstruction_degree: int | None = None
    obstruction_coefficient: int | None = None

    def __str__(self):
        if self.complete_intersection_shape:
            num = " ".join(f"(1-t^{a})" for a in self.numerator_exponents) or "1"
            den = " ".join(f"(1-t^{b})" for b in self.denominator_exponents) or "1"
            return f"complete-intersection shape: {num} / {den}"
        return (f"obstruction: residual numerator {list(self.residual)} has coefficient "
                f"{self.obstruction_coefficient} at t^{self.obstruction_degree}")


def ci_diagnostic(cf: ClosedForm) -> CIReport:
    """Try to write cf as prod (1-t^a) / prod (1-t^b) by stripping binomial factors.

    Numerator factors (1-t^a) are stripped greedily from the largest a down;
    a factor (1+t^a) is rewritten as (1-t^{2a})/(1-t^a). Whatever is left
    must be 1; otherwise the residual and its largest coefficient are
    reported. This is a heuristic shape test, not a proof.
    """
    num = list(cf.numerator)
    den = Counter(cf.denominator)
    top: Counter = Counter()
    if num and num[0] == -1:
        num = [-c for c in num]  # overall sign
    progress = True
    while progress and len(num) > 1:
        progress = False
        for a in range(len(num) - 1, 0, -1):
            q = poly_divmod_binomial(num, a)
            if q is not None:
                num, progress = list(q), True
                top[a] += 1
                break
            q = poly_div_plus_binomial(num, a)
            if q is not None:
                num, progress = list(q), True
                top[2 * a] += 1
                den[a] += 1
                break
        while len(num) > 1 and num[-1] == 0:
            num.pop()
    common = top & den
    top -= common
    den -= common
    if num == [1]:
        return CIReport(True, tuple(sorted(top.elements())), tuple(sorted(den.elements())))
    worst = max(range(len(num)), key=lambda i: (abs(num[i]) if i else 0, -i))
    return CIReport(False, tuple(sorted(top.elements())), tuple(sorted(den.elements())), tuple(num),
                    worst, num[worst])
