import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from multiloop.algebra import Ring
from multiloop.matrix import MatrixError, PolyMatrix, det_cofactor, det_fraction_free

from strategies import polynomials

RING = Ring(("x", "y"))


def to_sympy(m: PolyMatrix):
    x, y = sympy.symbols("x y")

    def conv(p):
        return sum(sympy.Rational(str(c)) * x ** a * y ** b for (a, b), c in p.terms.items())

    return sympy.Matrix([[conv(a) for a in row] for row in m.rows])


def test_identity_det():
    assert det_fraction_free(PolyMatrix.identity(RING, 3)) == 1


def test_two_by_two():
    ring = Ring(("b1",))
    b1 = ring.var("b1")
    m = PolyMatrix(ring, [[0, 1], [b1, 0]])
    assert det_fraction_free(m) == -b1
    assert det_cofactor(m) == -b1


def test_pivoting_needed():
    # zero in the (0, 0) slot forces a row swap
    x, y = RING.gens("x", "y")
    m = PolyMatrix(RING, [[0, x, 1], [y, 0, x], [1, y, 0]])
    assert det_fraction_free(m) == det_cofactor(m)


def test_singular():
    x = RING.var("x")
    m = PolyMatrix(RING, [[x, x], [x * 2, x * 2]])
    assert det_fraction_free(m).is_zero()


def test_non_square():
    with pytest.raises(MatrixError):
        det_fraction_free(PolyMatrix(RING, [[1, 2, 3], [4, 5, 6]]))


def test_shape_mismatch():
    with pytest.raises(MatrixError):
        PolyMatrix.identity(RING, 2) * PolyMatrix.identity(RING, 3)


matrices = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(polynomials(Ring(("x", "y")), 2), min_size=n, max_size=n),
                       min_size=n, max_size=n)).map(lambda rows: PolyMatrix(RING, rows))


@settings(max_examples=25)
@given(matrices)
def test_determinants_agree(m):
    a = det_fraction_free(m)
    assert a == det_cofactor(m)
    assert sympy.expand(to_sympy(m).det(method="berkowitz") - to_sympy(PolyMatrix(RING, [[a]]))[0, 0]) == 0


@given(matrices)
def test_transpose_and_trace(m):
    assert m.T.T == m
    assert (m * m).trace() == (m.T * m.T).trace()


def test_power():
    x = RING.var("x")
    m = PolyMatrix(RING, [[1, x], [0, 1]])
    assert m ** 5 == PolyMatrix(RING, [[1, x * 5], [0, 1]])
    assert m.powers(3)[3] == m ** 3
