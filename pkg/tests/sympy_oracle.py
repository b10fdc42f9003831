"""Slice matrices rebuilt in sympy, straight from the displayed patterns.

Shares no code with the package; used to cross-check the exact kernel.
"""

from math import comb, factorial

import sympy as sp

X1, Y1, X2, Y2, W = sp.symbols("x1 y1 x2 y2 w")


def build(r):
    n = 2 * r
    bs = sp.symbols(f"b1:{r}")
    c = 1 / sp.sqrt(2 * factorial(2 * r - 3))
    A = sp.zeros(n, n)
    for i in range(1, 2 * r - 2):
        A[i - 1, i] = i
    for i in range(1, 2 * r - 1):
        for j in range(1, i):
            if (i - j) % 2 == 1:
                k = (i - j + 1) // 2
                A[i - 1, j - 1] = comb(2 * r - 2 - j, 2 * k - 1) * bs[k - 1]
    A[2 * r - 3, 2 * r - 2] = c * Y1
    A[2 * r - 3, 2 * r - 1] = c * X1
    A[2 * r - 2, 0] = -c * X1
    A[2 * r - 2, 2 * r - 2] = W
    A[2 * r - 2, 2 * r - 1] = -2 * X2
    A[2 * r - 1, 0] = c * Y1
    A[2 * r - 1, 2 * r - 2] = 2 * Y2
    A[2 * r - 1, 2 * r - 1] = -W
    return A, bs


def alphas(r):
    """alpha_k with b_k = alpha_k (w^2 - 4 x2 y2)^k, by sympy's solver."""
    A, bs = build(r)
    D = W ** 2 - 4 * X2 * Y2
    sol = {}
    out = []
    for k in range(1, r):
        tr = sp.expand((A.subs(sol) ** (2 * k)).trace())
        value = sp.solve(tr, bs[k - 1])[0]
        sol[bs[k - 1]] = value
        out.append(sp.nsimplify(sp.cancel(value / D ** k)))
    return out, A.subs(sol)


def relation(r):
    """det A on the nilpotent slice."""
    _, A = alphas(r)
    return sp.expand(A.det(method="berkowitz"))
