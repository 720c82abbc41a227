import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import det_oracle, permanent_oracle
from tpverify.errors import CapExceeded, ShapeError
from tpverify.polymat import (
    PolyMatrix,
    all_minors,
    det,
    det_laplace,
    matmul,
    permanent_ryser,
    submatrix,
    transpose,
)
from tpverify.qpoly import ONE, Q, QPoly

small_poly = st.lists(st.integers(-4, 4), max_size=3).map(QPoly)


def square(max_n=4, min_n=0):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(small_poly, min_size=n * n, max_size=n * n).map(lambda e: PolyMatrix(n, n, e))
    )


def test_det_examples():
    H1 = PolyMatrix.from_rows([[1, [1, 1]], [[1, 1], [1, 4, 1]]])
    assert det(H1) == QPoly([0, 2])
    assert det(PolyMatrix(0, 0, [])) == ONE
    assert det(PolyMatrix.identity(5)) == ONE


def test_det_rejects():
    with pytest.raises(ShapeError):
        det(PolyMatrix.zeros(2, 3))
    with pytest.raises(CapExceeded):
        det(PolyMatrix.identity(9))
    assert det(PolyMatrix.identity(9), cap=None) == ONE


def test_submatrix_checks_indices():
    m = PolyMatrix.identity(3)
    assert submatrix(m, (0, 2), (0, 2)) == PolyMatrix.identity(2)
    with pytest.raises(ShapeError):
        submatrix(m, (2, 0), (0, 1))
    with pytest.raises(ShapeError):
        submatrix(m, (0, 3), (0, 1))


def test_shape_errors():
    with pytest.raises(ShapeError):
        matmul(PolyMatrix.zeros(2, 3), PolyMatrix.zeros(2, 3))
    with pytest.raises(ShapeError):
        PolyMatrix.from_rows([[1, 2], [3]])


@given(square())
def test_det_matches_oracles(m):
    assert det(m) == det_oracle(m)
    assert det(m) == det_laplace(m)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(square(n, n), square(n, n))))
def test_det_multiplicative(pair):
    a, b = pair
    assert det(matmul(a, b)) == det(a) * det(b)


@given(square())
def test_det_transpose(m):
    assert det(transpose(m)) == det(m)


@given(square(4, 1))
def test_all_minors_match_det(m):
    minors = all_minors(m, m.rows)
    for (I, J), value in minors.items():
        assert value == det(submatrix(m, I, J))


@given(square(4))
def test_permanent(m):
    assert permanent_ryser(m) == permanent_oracle(m)


@given(square(3, 1))
def test_json_roundtrip(m):
    assert PolyMatrix.from_json(m.to_json()) == m


def test_json_shape_validation():
    data = PolyMatrix.identity(2).to_json()
    data["cols"] = 3
    with pytest.raises(ShapeError):
        PolyMatrix.from_json(data)


def test_matmul_identity():
    m = PolyMatrix.from_rows([[Q, 1], [2, Q * Q]])
    assert m @ PolyMatrix.identity(2) == m
    assert transpose(transpose(m)) == m
