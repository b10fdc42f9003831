"""Exact arithmetic kernel.

Rationals (``fractions.Fraction``) with an optional quadratic extension
Q(sqrt(d)), sparse multivariate Laurent polynomials over a fixed ordered
variable table, and fractions with a single fixed pivot denominator.

Coefficients are stored canonically: a value whose radical part vanishes is
kept as a plain ``int``/``Fraction``; only genuinely irrational values are
``Coefficient`` instances. Everything here is immutable.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import isqrt, prod
from numbers import Rational
from operator import add, sub
from typing import Iterable, Mapping, Union


class AlgebraError(ArithmeticError):
    pass


class RingMismatch(AlgebraError, ValueError):
    pass


class NotDivisible(AlgebraError):
    """Raised by exact division; ``remainder`` is a nonzero witness."""

    def __init__(self, remainder, message="no exact quotient"):
        super().__init__(f"{message}: remainder {remainder}")
        self.remainder = remainder


class NotInvertible(AlgebraError):
    pass


class PivotMismatch(AlgebraError, ValueError):
    pass


def _rational(q) -> Union[int, Fraction]:
    if isinstance(q, int):
        return q
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else q


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, m = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(m) ** 2 == m


class Coefficient:
    """An element a + b*sqrt(d) of Q(sqrt(d)) with b != 0.

    Arithmetic results whose radical part cancels come back as plain
    rationals, so ``c * c`` for ``c = 1/sqrt(d)`` is the ``Fraction`` 1/d.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = _rational(a)
        self.b = _rational(b)
        self.d = Fraction(d)

    @staticmethod
    def make(a, b, d):
        """Canonical constructor: drops to a rational when ``b == 0``."""
        if b == 0:
            return _rational(a)
        return Coefficient(a, b, d)

    @property
    def rational_part(self):
        return self.a

    @property
    def radical_part(self):
        return self.b

    def _split(self, other):
        if isinstance(other, Coefficient):
            if other.d != self.d:
                raise AlgebraError(f"mixed extensions sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, Rational):
            return other, 0
        return None

    def __add__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return Coefficient.make(self.a + s[0], self.b + s[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient(-self.a, -self.b, self.d)

    def __sub__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return Coefficient.make(self.a - s[0], self.b - s[1], self.d)

    def __rsub__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return Coefficient.make(s[0] - self.a, s[1] - self.b, self.d)

    def __mul__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        a, b = s
        return Coefficient.make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return Fraction(self.a) ** 2 - Fraction(self.b) ** 2 * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} has zero norm")
        return Coefficient.make(Fraction(self.a) / n, -Fraction(self.b) / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Coefficient):
            return self * other.inverse()
        if isinstance(other, Rational):
            return Coefficient.make(Fraction(self.a) / other, Fraction(self.b) / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False  # canonical form: a Coefficient is never rational

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Coefficient({self.a!r}, {self.b!r}, {self.d!r})"

    def __str__(self):
        return format_coefficient(self)


Scalar = Union[int, Fraction, Coefficient]


def is_scalar(x) -> bool:
    return isinstance(x, (Rational, Coefficient))


def format_coefficient(c) -> str:
    if not isinstance(c, Coefficient):
        return format_rational(c)
    rad = f"({format_rational(c.b)})√{format_rational(c.d)}"
    if c.a == 0:
        return rad
    return f"({format_rational(c.a)} + {rad})"


def _coeff_inverse(c):
    if isinstance(c, Coefficient):
        return c.inverse()
    return _rational(Fraction(1) / Fraction(c))


@dataclass(frozen=True)
class Ring:
    """Variable table plus coefficient configuration.

    ``laurent`` names the variables allowed negative exponents; ``d`` is the
    radicand of the coefficient extension (``None`` for plain rationals).
    """

    names: tuple
    laurent: frozenset = frozenset()
    d: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "laurent", frozenset(self.laurent))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        unknown = self.laurent - set(self.names)
        if unknown:
            raise ValueError(f"laurent variables {sorted(unknown)} not in table")
        if self.d is not None:
            d = Fraction(self.d)
            if d <= 0 or _is_rational_square(d):
                raise ValueError(f"radicand must be a positive non-square rational, got {d}")
            object.__setattr__(self, "d", d)

    @cached_property
    def index(self) -> dict:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def _laurent_mask(self) -> tuple:
        return tuple(n in self.laurent for n in self.names)

    @cached_property
    def zero_exponent(self) -> tuple:
        return (0,) * len(self.names)

    def __len__(self):
        return len(self.names)

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}; ring has {self.names}") from None

    def var(self, name: str) -> "Polynomial":
        i = self.position(name)
        e = [0] * len(self.names)
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self, *names) -> tuple:
        return tuple(self.var(n) for n in (names or self.names))

    def const(self, c) -> "Polynomial":
        c = self.coerce_scalar(c)
        return Polynomial(self, {self.zero_exponent: c} if c != 0 else {})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def sqrt_d(self) -> Coefficient:
        if self.d is None:
            raise AlgebraError("ring has no quadratic extension")
        return Coefficient(0, 1, self.d)

    def coefficient(self, a, b=0):
        if b != 0 and self.d is None:
            raise AlgebraError("radical part requires an extension")
        return Coefficient.make(a, b, self.d)

    def coerce_scalar(self, c):
        if isinstance(c, Coefficient):
            if c.d != self.d:
                raise AlgebraError(f"coefficient in sqrt({c.d}) does not fit ring with d={self.d}")
            return c
        if isinstance(c, Rational):
            return _rational(c)
        raise TypeError(f"not a scalar: {c!r}")

    def check_exponent(self, e: tuple):
        for x, lau, name in zip(e, self._laurent_mask, self.names):
            if x < 0 and not lau:
                raise AlgebraError(f"negative exponent on polynomial variable {name}")

    def extend(self, names=(), laurent=(), d=None) -> "Ring":
        """A ring with extra variables appended (same coefficients unless ``d`` given)."""
        return Ring(self.names + tuple(names), self.laurent | frozenset(laurent), self.d if d is None else d)

    def embed(self, p: "Polynomial") -> "Polynomial":
        """Move ``p`` into this ring by variable name."""
        if p.ring is self or p.ring == self:
            return p
        pos = []
        dropped = []
        for i, n in enumerate(p.ring.names):
            if n in self.index:
                pos.append((i, self.index[n]))
            else:
                dropped.append(i)
        terms = {}
        width = len(self.names)
        for m, c in p.terms.items():
            if any(m[i] for i in dropped):
                names = [p.ring.names[i] for i in dropped if m[i]]
                raise KeyError(f"variables {names} occur in {p} but not in target ring")
            e = [0] * width
            for i, j in pos:
                e[j] = m[i]
            e = tuple(e)
            self.check_exponent(e)
            terms[e] = self.coerce_scalar(c)
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Sparse Laurent polynomial: a dict from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # --- coercion -------------------------------------------------------
    def _same_ring(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(f"{self.ring.names} vs {other.ring.names}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if is_scalar(other):
            return self.ring.const(other)
        return None

    # --- queries --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exponent in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring.zero_exponent, 0)

    def sorted_terms(self):
        """Terms in canonical order: descending lexicographic on exponents."""
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self):
        m = max(self.terms)
        return m, self.terms[m]

    def variables(self) -> tuple:
        used = set()
        for m in self.terms:
            used.update(i for i, x in enumerate(m) if x)
        return tuple(self.ring.names[i] for i in sorted(used))

    def degree_range(self, name: str) -> tuple:
        i = self.ring.position(name)
        es = [m[i] for m in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    def degree(self, name: str) -> int:
        return self.degree_range(name)[1]

    def weighted_degrees(self, weights: Mapping) -> set:
        w = [weights.get(n, 0) for n in self.ring.names]
        return {sum(a * b for a, b in zip(m, w)) for m in self.terms}

    def is_homogeneous(self, weights: Mapping, degree: int | None = None) -> bool:
        degs = self.weighted_degrees(weights)
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def coefficients_in(self, name: str) -> dict:
        """Split as sum_k coeff_k * name^k; returns {k: coeff_k}."""
        i = self.ring.position(name)
        out: dict = {}
        for m, c in self.terms.items():
            k = m[i]
            rest = m[:i] + (0,) + m[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Polynomial._raw(self.ring, t) for k, t in out.items()}

    # --- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        res = dict(big)
        for m, c in small.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v = v + c
                if v == 0:
                    del res[m]
                else:
                    res[m] = v
        return Polynomial._raw(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce_scalar(c)
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        res = {}
        for m, v in self.terms.items():
            x = v * c
            if x != 0:
                res[m] = x
        return Polynomial._raw(self.ring, res)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        bitems = list(b.items())
        for m1, c1 in a.items():
            for m2, c2 in bitems:
                m = tuple(map(add, m1, m2))
                v = get(m)
                res[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in res.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(_coeff_inverse(self.ring.coerce_scalar(other)))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return exact_divide(self, other)

    # --- units ----------------------------------------------------------
    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (m,) = self.terms
        return all(x == 0 or lau for x, lau in zip(m, self.ring._laurent_mask))

    def inverse(self) -> "Polynomial":
        if not self.is_unit():
            raise NotInvertible(f"{self} is not a unit of the Laurent ring")
        ((m, c),) = self.terms.items()
        return Polynomial._raw(self.ring, {tuple(-x for x in m): _coeff_inverse(c)})

    # --- calculus and substitution ---------------------------------------
    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.position(name)
        res = {}
        for m, c in self.terms.items():
            k = m[i]
            if k:
                res[m[:i] + (k - 1,) + m[i + 1:]] = c * k
        return Polynomial._raw(self.ring, res)

    def subs(self, mapping: Mapping, ring: Ring | None = None) -> "Polynomial":
        """Ring homomorphism fixing coefficients.

        ``mapping`` sends variable names to polynomials in the target ring;
        unmapped variables are carried over by name.
        """
        target = ring or self.ring
        images = []
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                images.append(v if isinstance(v, Polynomial) else target.const(v))
            else:
                images.append(target.var(n) if n in target.index else None)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                img = images[i]
                if img is None:
                    raise KeyError(f"variable {self.ring.names[i]} has no image in target ring")
                cache[key] = img ** k
            return cache[key]

        total: dict = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            for tm, tc in term.terms.items():
                v = total.get(tm)
                total[tm] = tc if v is None else v + tc
        return Polynomial(target, total)

    # --- equality / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                return False
            return self.terms == other.terms
        if is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def _monomial_text(ring: Ring, m: tuple) -> str:
    parts = []
    for name, k in zip(ring.names, m):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form; ``parse_polynomial`` inverts it exactly."""
    if not p.terms:
        return "0"
    out = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(p.ring, m)
        negative = not isinstance(c, Coefficient) and c < 0
        mag = -c if negative else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_coefficient(mag)}*{mono}"
        else:
            body = format_coefficient(mag)
        if idx == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


_RATIONAL = r"-?\d+(?:/\d+)?"
_COEFF_RE = re.compile(
    rf"^(?:(?P<rat>{_RATIONAL})"
    rf"|\((?P<rad>{_RATIONAL})\)√(?P<d1>{_RATIONAL})"
    rf"|\((?P<a>{_RATIONAL}) \+ \((?P<b>{_RATIONAL})\)√(?P<d2>{_RATIONAL})\))$"
)
_FACTOR_RE = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z_0-9']*)(?:\^(?P<exp>-?\d+))?$")


def _split_top(text: str, seps: str):
    """Split at separator characters outside parentheses; yields (sep, chunk)."""
    depth = 0
    cur = []
    lead = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps:
            yield lead, "".join(cur)
            lead, cur = ch, []
        else:
            cur.append(ch)
    yield lead, "".join(cur)


def _parse_coefficient(ring: Ring, text: str):
    m = _COEFF_RE.match(text)
    if not m:
        return None
    if m["rat"] is not None:
        return _rational(Fraction(m["rat"]))
    if m["rad"] is not None:
        a, b, d = 0, Fraction(m["rad"]), Fraction(m["d1"])
    else:
        a, b, d = Fraction(m["a"]), Fraction(m["b"]), Fraction(m["d2"])
    if ring.d != d:
        raise ValueError(f"radicand {d} does not match ring (d={ring.d})")
    return Coefficient.make(a, b, d)


def _split_terms(text: str):
    """Split canonical text into (negative, body) pairs at depth-0 " + " / " - "."""
    out = []
    depth = 0
    start = 0
    negative = False
    if text.startswith("-"):
        negative, start = True, 1
    i = start
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text[i:i + 3] in (" + ", " - "):
            out.append((negative, text[start:i]))
            negative = text[i + 1] == "-"
            i += 3
            start = i
            continue
        i += 1
    out.append((negative, text[start:]))
    return out


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    text = text.strip()
    if text == "0":
        return ring.zero
    terms: dict = {}
    for negative, body in _split_terms(text):
        factors = [f for _, f in _split_top(body, "*")]
        coeff = 1
        if factors and (c := _parse_coefficient(ring, factors[0])) is not None:
            coeff = c
            factors = factors[1:]
        e = [0] * len(ring.names)
        for f in factors:
            fm = _FACTOR_RE.match(f)
            if not fm:
                raise ValueError(f"cannot parse factor {f!r} in {text!r}")
            e[ring.position(fm["name"])] += int(fm["exp"] or 1)
        e = tuple(e)
        ring.check_exponent(e)
        if negative:
            coeff = -coeff
        terms[e] = terms.get(e, 0) + coeff
    return Polynomial(ring, terms)


# --- exact division -------------------------------------------------------

def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return h with p == q*h, or raise NotDivisible carrying a remainder.

    Long division along descending lex order. Candidate quotient exponents
    are confined to the box allowed by per-variable degree additivity, which
    also makes the loop terminate for Laurent variables.
    """
    p._same_ring(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    if p.is_zero():
        return ring.zero
    if q.is_constant():
        return p.scale(_coeff_inverse(q.constant_value()))
    if len(q.terms) == 1:
        ((qm, qc),) = q.terms.items()
        inv = _coeff_inverse(qc)
        res = {}
        for m, c in p.terms.items():
            e = tuple(map(sub, m, qm))
            for x, lau in zip(e, ring._laurent_mask):
                if x < 0 and not lau:
                    raise NotDivisible(p, f"monomial {q} does not divide {p}")
            res[e] = c * inv
        return Polynomial._raw(ring, res)

    n = len(ring.names)
    lo = []
    hi = []
    for i in range(n):
        pe = [m[i] for m in p.terms]
        qe = [m[i] for m in q.terms]
        lo.append(min(pe) - min(qe))
        hi.append(max(pe) - max(qe))
        if lo[-1] > hi[-1] or (lo[-1] < 0 and not ring._laurent_mask[i]):
            raise NotDivisible(p, f"degree bounds in {ring.names[i]} exclude a quotient")
    qm, qc = q.leading_term()
    qinv = _coeff_inverse(qc)
    qrest = [(m, c) for m, c in q.terms.items() if m != qm]

    rem = dict(p.terms)
    heap = [tuple(-x for x in m) for m in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        key = heapq.heappop(heap)
        m = tuple(-x for x in key)
        c = rem.get(m)
        if c is None:
            continue  # stale heap entry
        e = tuple(map(sub, m, qm))
        if any(x < a or x > b for x, a, b in zip(e, lo, hi)):
            raise NotDivisible(Polynomial(ring, rem))
        t = c * qinv
        quot[e] = t
        del rem[m]
        for m2, c2 in qrest:
            mm = tuple(map(add, e, m2))
            v = rem.get(mm)
            if v is None:
                rem[mm] = -t * c2
                heapq.heappush(heap, tuple(-x for x in mm))
            else:
                v = v - t * c2
                if v == 0:
                    del rem[mm]
                else:
                    rem[mm] = v
    return Polynomial._raw(ring, quot)


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


# --- localization at a pivot -----------------------------------------------

@dataclass(frozen=True, eq=False)
class Localized:
    """numerator / pivot**power, with no automatic cancellation."""

    numerator: Polynomial
    pivot: Polynomial
    power: int = 0

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("pivot power must be nonnegative")
        self.numerator._same_ring(self.pivot)
        if self.pivot.is_zero():
            raise ZeroDivisionError("zero pivot")

    @property
    def ring(self) -> Ring:
        return self.numerator.ring

    def _check(self, other: "Localized"):
        if other.pivot != self.pivot:
            raise PivotMismatch(f"pivots {self.pivot} and {other.pivot} differ")

    def _coerce(self, other):
        if isinstance(other, Localized):
            self._check(other)
            return other
        if isinstance(other, Polynomial) or is_scalar(other):
            num = other if isinstance(other, Polynomial) else self.ring.const(other)
            return Localized(num, self.pivot, 0)
        return None

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def _raised(self, k: int) -> Polynomial:
        """Numerator rewritten over pivot**k (k >= power)."""
        if k == self.power:
            return self.numerator
        return self.numerator * self.pivot ** (k - self.power)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        k = max(self.power, other.power)
        return Localized(self._raised(k) + other._raised(k), self.pivot, k)

    __radd__ = __add__

    def __neg__(self):
        return Localized(-self.numerator, self.pivot, self.power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Localized(self.numerator * other.numerator, self.pivot, self.power + other.power)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Localized(self.numerator ** n, self.pivot, self.power * n)

    def inverse(self) -> "Localized":
        """Invert when the numerator is (unit monomial) * pivot**j."""
        num, j = self.numerator, 0
        while not num.is_unit():
            try:
                num = exact_divide(num, self.pivot)
            except (NotDivisible, AlgebraError):
                raise NotInvertible(f"{self} is not invertible in the localized ring") from None
            j += 1
        # value = unit * pivot**(j - power)
        shift = j - self.power
        inv = num.inverse()
        if shift >= 0:
            return Localized(inv, self.pivot, shift)
        return Localized(inv * self.pivot ** (-shift), self.pivot, 0)

    def derivative(self, name: str) -> "Localized":
        p, k, s = self.numerator, self.power, self.pivot
        if k == 0:
            return Localized(p.derivative(name), s, 0)
        return Localized(p.derivative(name) * s - p * s.derivative(name) * k, s, k + 1)

    def subs_numerator(self, fn):
        return Localized(fn(self.numerator), self.pivot, self.power)

    def to_polynomial(self) -> Polynomial:
        """The value as a polynomial; NotDivisible if a pivot power remains."""
        if self.power == 0:
            return self.numerator
        return exact_divide(self.numerator, self.pivot ** self.power)

    def reduce(self) -> "Localized":
        """Cancel pivot factors from the numerator as far as exactly possible."""
        num, k = self.numerator, self.power
        while k and not num.is_zero():
            try:
                num = exact_divide(num, self.pivot)
            except NotDivisible:
                break
            k -= 1
        return Localized(num, self.pivot, k)

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction, Coefficient)):
            other = self._coerce(other)
        if not isinstance(other, Localized):
            return NotImplemented
        self._check(other)
        k = max(self.power, other.power)
        return self._raised(k) == other._raised(k)

    __hash__ = None

    def __str__(self):
        if self.power == 0:
            return str(self.numerator)
        den = f"({self.pivot})" + (f"^{self.power}" if self.power > 1 else "")
        return f"({self.numerator}) / {den}"

    def __repr__(self):
        return f"Localized({self})"


def localize(p, pivot: Polynomial) -> Localized:
    if isinstance(p, Localized):
        if p.pivot != pivot:
            raise PivotMismatch(f"pivots {p.pivot} and {pivot} differ")
        return p
    if not isinstance(p, Polynomial):
        p = pivot.ring.const(p)
    return Localized(p, pivot, 0)


def substitute(p: Polynomial, assignment: Mapping, pivot: Polynomial) -> Localized:
    """Image of ``p`` under variable -> Localized assignment.

    Variables not assigned are carried into the pivot's ring by name.
    Negative exponents require the assigned value to be invertible.
    """
    target = pivot.ring
    images = {}
    for n in p.ring.names:
        if n in assignment:
            images[n] = localize(assignment[n], pivot)
        elif n in target.index:
            images[n] = Localized(target.var(n), pivot, 0)
    cache: dict = {}

    def power(n, k):
        key = (n, k)
        if key not in cache:
            if n not in images:
                raise KeyError(f"variable {n} has no image in target ring")
            cache[key] = images[n] ** k
        return cache[key]

    # accumulate numerators grouped by pivot power, then align once
    by_power: dict = {}
    names = p.ring.names
    for m, c in p.terms.items():
        term = Localized(target.const(c), pivot, 0)
        for n, k in zip(names, m):
            if k:
                term = term * power(n, k)
        by_power[term.power] = by_power.get(term.power, target.zero) + term.numerator
    if not by_power:
        return Localized(target.zero, pivot, 0)
    top = max(by_power)
    num = target.zero
    for k, v in by_power.items():
        num = num + (v if k == top else v * pivot ** (top - k))
    return Localized(num, pivot, top)


# --- symmetric functions ------------------------------------------------------

def elementary_symmetric(values: Iterable[Polynomial], k: int, ring: Ring | None = None) -> Polynomial:
    """sigma_k of ``values`` by direct subset expansion; sigma_0 = 1, sigma_k = 0 for k > n."""
    values = list(values)
    if ring is None:
        ring = values[0].ring
    if k == 0:
        return ring.one
    if k < 0 or k > len(values):
        return ring.zero
    total = ring.zero
    for combo in combinations(values, k):
        total = total + prod(combo[1:], start=combo[0])
    return total


def elementary_from_power_sums(power_sums: list) -> list:
    """Newton's identities: [p_1..p_n] -> [e_0..e_n] with k e_k = sum (-1)^(i-1) e_(k-i) p_i."""
    if not power_sums:
        return []
    ring = power_sums[0].ring
    e = [ring.one]
    for k in range(1, len(power_sums) + 1):
        acc = ring.zero
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc = acc + (term if i % 2 else -term)
        e.append(acc.scale(Fraction(1, k)))
    return e
