"""Dense matrices of polynomials and exact determinants.

Most entries of the slice matrices are zero polynomials, so products skip
zero entries. Two independent determinant routes are provided: fraction-free
(Bareiss) elimination and memoized cofactor expansion.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import NotDivisible, Polynomial, Ring, exact_divide


class MatrixError(ValueError):
    pass


class PolyMatrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        rows = tuple(tuple(ring.embed(x) if isinstance(x, Polynomial) else ring.const(x) for x in row)
                     for row in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise MatrixError("matrix must be nonempty and rectangular")
        self.ring = ring
        self.rows = rows

    @classmethod
    def _raw(cls, ring, rows):
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, ring: Ring, n: int, m: int | None = None) -> "PolyMatrix":
        z = ring.zero
        return cls._raw(ring, tuple((z,) * (m or n) for _ in range(n)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMatrix":
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_entries(cls, ring: Ring, n: int, entries: dict, m: int | None = None) -> "PolyMatrix":
        """Build from a sparse {(i, j): value} dict with 0-based indices."""
        grid = [[ring.zero] * (m or n) for _ in range(n)]
        for (i, j), v in entries.items():
            grid[i][j] = v if isinstance(v, Polynomial) else ring.const(v)
        return cls(ring, grid)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "PolyMatrix"):
        if other.ring != self.ring:
            raise MatrixError("matrices over different rings")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix._raw(self.ring, tuple(tuple(a + b for a, b in zip(r, s))
                                                for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return PolyMatrix._raw(self.ring, tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            other = other if isinstance(other, Polynomial) else self.ring.const(other)
            return PolyMatrix._raw(self.ring, tuple(tuple(a * other for a in r) for r in self.rows))
        self._check(other)
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        # sparse column lists of the right factor
        cols = [[(l, other.rows[l][j]) for l in range(k) if other.rows[l][j]] for j in range(m)]
        zero = self.ring.zero
        out = []
        for row in self.rows:
            nz = {l: a for l, a in enumerate(row) if a}
            new = []
            for j in range(m):
                acc = zero
                for l, b in cols[j]:
                    a = nz.get(l)
                    if a is not None:
                        acc = acc + a * b
                new.append(acc)
            out.append(tuple(new))
        return PolyMatrix._raw(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyMatrix":
        if n < 0:
            raise ValueError("negative matrix power")
        result = PolyMatrix.identity(self.ring, self.shape[0])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def powers(self, top: int) -> list:
        """[M^0, M^1, ..., M^top] by repeated multiplication."""
        out = [PolyMatrix.identity(self.ring, self.shape[0])]
        for _ in range(top):
            out.append(out[-1] * self)
        return out

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix._raw(self.ring, tuple(zip(*self.rows)))

    @property
    def T(self):
        return self.transpose()

    def trace(self) -> Polynomial:
        n, m = self.shape
        if n != m:
            raise MatrixError("trace of a non-square matrix")
        acc = self.ring.zero
        for i in range(n):
            acc = acc + self.rows[i][i]
        return acc

    def block(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix._raw(self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self.rows])

    def subs(self, mapping, ring: Ring | None = None) -> "PolyMatrix":
        target = ring or self.ring
        return PolyMatrix._raw(target, tuple(tuple(a.subs(mapping, target) for a in r) for r in self.rows))

    def embed(self, ring: Ring) -> "PolyMatrix":
        return PolyMatrix._raw(ring, tuple(tuple(ring.embed(a) for a in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def nonzero_entries(self):
        return [((i, j), a) for i, r in enumerate(self.rows) for j, a in enumerate(r) if a]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    __hash__ = None

    def __str__(self):
        return "\n".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)

    def __repr__(self):
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]})"


def commutator(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a * b - b * a


def det_fraction_free(m: PolyMatrix) -> Polynomial:
    """Bareiss elimination with row pivoting; every division is exact."""
    n, k = m.shape
    if n != k:
        raise MatrixError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    ring = m.ring
    sign = 1
    prev = ring.one
    for col in range(n - 1):
        if not a[col][col]:
            swap = next((i for i in range(col + 1, n) if a[i][col]), None)
            if swap is None:
                return ring.zero
            a[col], a[swap] = a[swap], a[col]
            sign = -sign
        piv = a[col][col]
        for i in range(col + 1, n):
            lead = a[i][col]
            for j in range(col + 1, n):
                num = a[i][j] * piv
                if lead and a[col][j]:
                    num = num - lead * a[col][j]
                if col:
                    try:
                        num = exact_divide(num, prev)
                    except NotDivisible as exc:  # cannot happen over an integral domain
                        raise AssertionError(f"Bareiss division not exact at column {col}") from exc
                a[i][j] = num
            a[i][col] = ring.zero
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def det_cofactor(m: PolyMatrix) -> Polynomial:
    """Laplace expansion along rows, memoized on the set of columns still free."""
    n, k = m.shape
    if n != k:
        raise MatrixError("determinant of a non-square matrix")
    rows = m.rows
    ring = m.ring

    @lru_cache(maxsize=None)
    def minor(i: int, free: frozenset) -> Polynomial:
        if i == n:
            return ring.one
        acc = ring.zero
        cols = sorted(free)
        for pos, j in enumerate(cols):
            a = rows[i][j]
            if not a:
                continue
            sub = minor(i + 1, free - {j})
            if sub:
                term = a * sub
                acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    return minor(0, frozenset(range(n)))
