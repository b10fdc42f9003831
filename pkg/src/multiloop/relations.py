"""The defining relations in the abstract ring C[x1, x2, y1, y2, w, z1..zr].

Both sides of the comparison (Coulomb branch and Slodowy slice) produce
polynomials in this ring, so equality is plain structural equality.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Polynomial, Ring, elementary_symmetric

GENERATORS = ("x1", "x2", "y1", "y2", "w")


@lru_cache(maxsize=None)
def abstract_ring(r: int = 0, d=None) -> Ring:
    """Generators, then z1..zr (r = 0 for the unflavored ring)."""
    return Ring(GENERATORS + tuple(f"z{i}" for i in range(1, r + 1)), d=d)


def grading(r: int) -> dict:
    """deg x1 = deg y1 = 2r-1, deg x2 = deg y2 = deg w = 2 (z's have degree 2)."""
    g = {"x1": 2 * r - 1, "y1": 2 * r - 1, "x2": 2, "y2": 2, "w": 2}
    g.update({f"z{i}": 2 for i in range(1, r + 1)})
    return g


def discriminant(ring: Ring) -> Polynomial:
    """D = w^2 - 4 x2 y2."""
    w, x2, y2 = ring.gens("w", "x2", "y2")
    return w * w - x2 * y2 * 4


def cubic_part(ring: Ring) -> Polynomial:
    """x1^2 y2 + x2 y1^2 + w x1 y1."""
    x1, x2, y1, y2, w = ring.gens(*GENERATORS)
    return x1 * x1 * y2 + x2 * y1 * y1 + w * x1 * y1


def starlet_polynomial(r: int, exponent: int | None = None, ring: Ring | None = None) -> Polynomial:
    """(w^2 - 4 x2 y2)^r - (x1^2 y2 + x2 y1^2 + w x1 y1).

    ``exponent`` overrides r in the power (negative controls only).
    """
    ring = ring or abstract_ring()
    return discriminant(ring) ** (r if exponent is None else exponent) - cubic_part(ring)


def sigmas(r: int, ring: Ring | None = None) -> list:
    """[sigma_0, ..., sigma_r] of z1..zr."""
    ring = ring or abstract_ring(r)
    zs = [ring.var(f"z{i}") for i in range(1, r + 1)]
    return [elementary_symmetric(zs, k, ring) for k in range(r + 1)]


def sigma_pair_sum(r: int, k: int, ring: Ring | None = None) -> Polynomial:
    """sum over m + n = 2k of (-1)^(mn) sigma_m sigma_n (sigma_j = 0 for j > r)."""
    ring = ring or abstract_ring(r)
    s = sigmas(r, ring)
    acc = ring.zero
    for m in range(0, 2 * k + 1):
        n = 2 * k - m
        if m > r or n > r:
            continue
        term = s[m] * s[n]
        acc = acc + (-term if (m * n) % 2 else term)
    return acc


def flavored_det_b(r: int, ring: Ring | None = None) -> Polynomial:
    """sum_{m+n even, m+n < 2r} (-1)^(mn) sigma_m sigma_n D^(r-1-(m+n)/2)."""
    ring = ring or abstract_ring(r)
    D = discriminant(ring)
    acc = ring.zero
    for k in range(r):
        acc = acc + sigma_pair_sum(r, k, ring) * D ** (r - 1 - k)
    return acc


def flavored_relation_polynomial(r: int, ring: Ring | None = None) -> Polynomial:
    """x1^2 y2 + x2 y1^2 + w x1 y1 - sum_{m+n even} (-1)^(mn) sigma_m sigma_n D^(r-(m+n)/2)."""
    ring = ring or abstract_ring(r)
    D = discriminant(ring)
    acc = ring.zero
    for k in range(r + 1):
        acc = acc + sigma_pair_sum(r, k, ring) * D ** (r - k)
    return cubic_part(ring) - acc
