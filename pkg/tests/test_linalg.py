from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from operadic.linalg import (ChainComplex, NotAComplexError, SparseMatrix, hstack, homology_dims, kernel_basis,
                             rank, rref, vstack)
from oracles import dense_rank

small = st.integers(-3, 3)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_dense_elimination(rows):
    assert rank(SparseMatrix.from_dense(rows)) == dense_rank(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_modular_rank_matches_dense_mod_p(rows):
    assert rank(SparseMatrix.from_dense(rows), p=5) == dense_rank(rows, p=5)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_kernel_and_has_right_size(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel_basis(m)
    assert len(ker) == m.shape[1] - rank(m)
    for v in ker:
        assert (m @ SparseMatrix.from_columns(m.shape[1], [v])).is_zero()


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_product_and_transpose(a_rows, b_rows):
    a = SparseMatrix.from_dense(a_rows)
    b = SparseMatrix.from_dense([r[: a.shape[0]] + [0] * (a.shape[0] - len(r)) for r in b_rows])
    assert (b @ a).transpose() == a.transpose() @ b.transpose()


def test_stacking_shapes():
    a = SparseMatrix.identity(2)
    assert hstack([a, a]).shape == (2, 4)
    assert vstack([a, a]).shape == (4, 2)
    assert rank(hstack([a, a])) == 2


def test_rref_pivots():
    rows, pivots = rref(SparseMatrix.from_dense([[2, 4], [1, 2]]))
    assert pivots == [0] and rows[0] == {0: Fraction(1), 1: Fraction(2)}


def test_circle_homology():
    # two vertices, two edges between them
    d1 = SparseMatrix.from_dense([[-1, -1], [1, 1]])
    c = ChainComplex({0: 2, 1: 2}, {1: d1})
    assert homology_dims(c) == {0: 1, 1: 1}
    assert c.euler_characteristic() == 0


def test_not_a_complex_is_rejected():
    d1 = SparseMatrix.from_dense([[1]])
    d2 = SparseMatrix.from_dense([[1]])
    with pytest.raises(NotAComplexError):
        homology_dims(ChainComplex({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2}))


def test_bad_shape_is_rejected():
    with pytest.raises(ValueError):
        ChainComplex({0: 1, 1: 2}, {1: SparseMatrix.identity(3)})
