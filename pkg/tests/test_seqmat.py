import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hankel_oracle, narayana_oracle
from tpverify.errors import ParameterError
from tpverify.polymat import PolyMatrix, matmul, transpose
from tpverify.qpoly import ONE, QPoly
from tpverify.seqmat import (
    RecurrenceData,
    b_matrix,
    check_generalized_params,
    coefficient_matrix,
    cs_matrix,
    first_column,
    generalized_data,
    hankel,
    is_q_log_convex_at,
    lb_matrix,
    narayana_b,
    pad_top_left,
    t_matrix,
    type_b_data,
)

q = QPoly([0, 1])


def test_narayana_examples():
    assert narayana_b(0) == ONE
    assert narayana_b(2) == QPoly([1, 4, 1])
    assert narayana_b(3) == QPoly([1, 9, 9, 1])
    with pytest.raises(ParameterError):
        narayana_b(-1)


@pytest.mark.parametrize("n", range(12))
def test_narayana_oracle(n):
    assert narayana_b(n) == narayana_oracle(n)


def test_coefficient_matrix_display():
    L0 = lb_matrix(0)
    assert L0 == PolyMatrix.from_rows([[1, 0], [[1, 1], 1]])
    L3 = lb_matrix(3)
    assert L3[2, 0] == QPoly([0, 2])
    assert L3[3, 1] == q
    assert L3[1, 0] == QPoly([1, 1])
    assert L3[2, 1] == QPoly([1, 1])
    assert L3[4, 4] == ONE


def test_insufficient_data():
    data = type_b_data(2)
    with pytest.raises(ParameterError):
        coefficient_matrix(data, 5)


def test_hankel_examples():
    assert hankel(0) == PolyMatrix.from_rows([[1]])
    assert hankel(1) == PolyMatrix.from_rows([[1, [1, 1]], [[1, 1], [1, 4, 1]]])
    assert hankel(3)[1, 2] == QPoly([1, 9, 9, 1])


@pytest.mark.parametrize("n", range(6))
def test_hankel_oracle(n):
    assert hankel(n).to_rows() == hankel_oracle(n)


def test_generalized_examples():
    d = generalized_data(1, 1, 2)
    assert d.s[0] == QPoly([1, 1]) and d.t[0] == QPoly([0, 2])
    assert d == type_b_data()
    d = generalized_data(1, 0, 1)
    assert d.s[0] == ONE and d.t[0] == q
    d = generalized_data(2, 1, 1)
    assert d.s[0] == q and d.t[0] == q and d.s[1] == QPoly([1, 1])


@pytest.mark.parametrize("case,e,f", [(1, 2, 1), (1, -1, 0), (2, 0, 1), (2, 1, 0), (3, 1, 1)])
def test_generalized_rejects(case, e, f):
    with pytest.raises(ParameterError):
        check_generalized_params(case, e, f)
    with pytest.raises(ParameterError):
        generalized_data(case, e, f)


def test_first_column_is_narayana():
    col = first_column(type_b_data(10), 8)
    assert col == [narayana_oracle(n) for n in range(9)]


@pytest.mark.parametrize("n", range(7))
def test_gluing_law(n):
    assert matmul(pad_top_left(b_matrix(n)), lb_matrix(n)) == b_matrix(n + 1)


@pytest.mark.parametrize("n", range(7))
def test_hankel_factorization(n):
    B = b_matrix(n)
    T = t_matrix(n)
    assert T == PolyMatrix.diag([1] + [QPoly.monomial(2, k) for k in range(1, n + 1)])
    assert matmul(matmul(B, T), transpose(B)) == hankel(n)


params = st.one_of(
    st.integers(0, 4).flatmap(lambda e: st.integers(e, 5).map(lambda f: (1, e, f))),
    st.tuples(st.just(2), st.integers(1, 4), st.integers(1, 4)),
)


@given(params, st.integers(0, 4))
def test_generalized_factorization(p, n):
    data = generalized_data(*p, length=2 * n + 2)
    C = cs_matrix(data, n)
    assert matmul(matmul(C, t_matrix(n, data)), transpose(C)) == hankel(n, data)
    if n >= 1:
        assert matmul(pad_top_left(cs_matrix(data, n - 1)), coefficient_matrix(data, n - 1)) == C


@pytest.mark.parametrize("n", range(1, 9))
def test_log_convexity(n):
    seq = [narayana_b(m) for m in range(n + 2)]
    assert is_q_log_convex_at(seq, n)


def test_recurrence_json_roundtrip():
    d = generalized_data(2, 3, 5, 6)
    assert RecurrenceData.from_json(d.to_json()) == d
