"""Truncated integer power series in t and rational generating functions.

A ``ClosedForm`` is N(t) / prod (1 - t^k): an integer numerator (list of
coefficients, lowest degree first) over a multiset of positive exponents.
Sums of closed forms are brought to a common denominator; no rational
function normal form is ever needed.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_CAP = 40


def _trim(coeffs: Sequence[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: Sequence[int], b: Sequence[int], cap: int | None = None) -> list:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if cap is not None:
        n = min(n, cap + 1)
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def binomial_factor(k: int) -> list:
    """Coefficients of 1 - t^k."""
    if k <= 0:
        raise ValueError(f"factor exponent must be positive, got {k}")
    c = [0] * (k + 1)
    c[0], c[k] = 1, -1
    return c


def poly_divmod_binomial(num: Sequence[int], k: int):
    """Divide by 1 - t^k exactly if possible; returns quotient or None."""
    rem = list(num)
    q = [0] * max(len(rem) - k, 0)
    # divide from the top: leading term of (1 - t^k) is -t^k
    for i in range(len(rem) - 1, k - 1, -1):
        c = rem[i]
        if c:
            q[i - k] = -c
            rem[i] = 0
            rem[i - k] += c
    if any(rem):
        return None
    return q


def poly_div_plus_binomial(num: Sequence[int], k: int):
    """Divide by 1 + t^k exactly if possible."""
    rem = list(num)
    q = [0] * max(len(rem) - k, 0)
    for i in range(len(rem) - 1, k - 1, -1):
        c = rem[i]
        if c:
            q[i - k] = c
            rem[i] = 0
            rem[i - k] -= c
    if any(rem):
        return None
    return q


def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag} {mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


@dataclass(frozen=True)
class TruncatedSeries:
    cap: int
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")
        if len(self.coefficients) != self.cap + 1:
            raise ValueError(f"expected {self.cap + 1} coefficients, got {len(self.coefficients)}")

    @classmethod
    def zero(cls, cap: int) -> "TruncatedSeries":
        return cls(cap, (0,) * (cap + 1))

    def __getitem__(self, k):
        return self.coefficients[k]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_caps(self, other)
        return TruncatedSeries(self.cap, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_caps(self, other)
        return TruncatedSeries(self.cap, tuple(poly_mul(self.coefficients, other.coefficients, self.cap)))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k and truncate."""
        c = ((0,) * k + self.coefficients)[: self.cap + 1]
        return TruncatedSeries(self.cap, c)

    def to_json(self) -> str:
        return json.dumps(list(self.coefficients))

    def __str__(self):
        return format_poly(self.coefficients) + f" + O(t^{self.cap + 1})"


def _check_caps(a: TruncatedSeries, b: TruncatedSeries):
    if a.cap != b.cap:
        raise ValueError(f"cap mismatch: {a.cap} vs {b.cap}")


@dataclass(frozen=True)
class SeriesComparison:
    equal: bool
    degree: int | None = None
    left: int | None = None
    right: int | None = None

    def __bool__(self):
        return self.equal


def series_equal(a: TruncatedSeries, b: TruncatedSeries) -> SeriesComparison:
    _check_caps(a, b)
    for k, (x, y) in enumerate(zip(a.coefficients, b.coefficients)):
        if x != y:
            return SeriesComparison(False, k, x, y)
    return SeriesComparison(True)


@dataclass(frozen=True)
class ClosedForm:
    """numerator(t) / prod_{k in denominator} (1 - t^k)."""

    numerator: tuple
    denominator: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(self.numerator))
        den = tuple(sorted(self.denominator))
        if any(k <= 0 for k in den):
            raise ValueError(f"denominator factors must be positive: {den}")
        object.__setattr__(self, "denominator", den)

    @classmethod
    def monomial(cls, k: int, denominator: Iterable[int] = (), coeff: int = 1) -> "ClosedForm":
        """coeff * t^k / prod (1 - t^j)."""
        return cls((0,) * k + (coeff,), tuple(denominator))

    @classmethod
    def from_factors(cls, numerator_factors: Iterable[int] = (), denominator: Iterable[int] = (),
                     extra: Sequence[int] = (1,)) -> "ClosedForm":
        """extra(t) * prod (1 - t^a) / prod (1 - t^b)."""
        num = list(extra)
        for a in numerator_factors:
            num = poly_mul(num, binomial_factor(a))
        return cls(tuple(num), tuple(denominator))

    def __mul__(self, other: "ClosedForm") -> "ClosedForm":
        return ClosedForm(tuple(poly_mul(self.numerator, other.numerator)), self.denominator + other.denominator)

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        return sum_closed_forms([self, other])

    def __neg__(self):
        return ClosedForm(tuple(-c for c in self.numerator), self.denominator)

    def __str__(self):
        num = format_poly(self.numerator)
        if not self.denominator:
            return num
        counts = Counter(self.denominator)
        den = " ".join(f"(1-t^{k})" + (f"^{m}" if m > 1 else "") for k, m in sorted(counts.items()))
        return f"({num}) / {den}"


def sum_closed_forms(forms: Iterable[ClosedForm]) -> ClosedForm:
    """Exact sum over the least common multiset of denominator factors."""
    forms = list(forms)
    common: Counter = Counter()
    for f in forms:
        for k, m in Counter(f.denominator).items():
            common[k] = max(common[k], m)
    total: list = []
    for f in forms:
        missing = common - Counter(f.denominator)
        num = list(f.numerator)
        for k in missing.elements():
            num = poly_mul(num, binomial_factor(k))
        total = poly_add(total, num)
    return ClosedForm(tuple(total), tuple(common.elements()))


def expand_closed_form(cf: ClosedForm, cap: int = DEFAULT_CAP) -> TruncatedSeries:
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    s = [0] * (cap + 1)
    s[0] = 1
    for k in cf.denominator:
        for i in range(k, cap + 1):
            s[i] += s[i - k]
    out = poly_mul(list(cf.numerator), s, cap)
    out += [0] * (cap + 1 - len(out))
    return TruncatedSeries(cap, tuple(out))


def closed_form_equal(a: ClosedForm, b: ClosedForm) -> bool:
    left = list(a.numerator)
    for k in b.denominator:
        left = poly_mul(left, binomial_factor(k))
    right = list(b.numerator)
    for k in a.denominator:
        right = poly_mul(right, binomial_factor(k))
    return _trim(left) == _trim(right)


def cross_degree_bound(a: ClosedForm, b: ClosedForm) -> int:
    """Degree bound of the cross-multiplied numerators."""
    return max(len(a.numerator) + sum(b.denominator), len(b.numerator) + sum(a.denominator))
