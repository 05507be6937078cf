import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_rank_mod_p, dense_rref, random_low_rank
from syzstab.linalg import (
    NotABasisError,
    SparseMat,
    in_row_space,
    initial_weights,
    kernel_basis,
    nullity,
    rank,
    rref,
    same_row_space,
    weight_elimination,
)


def small_matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_rows).flatmap(
        lambda n: st.integers(1, max_cols).flatmap(
            lambda m: st.lists(st.lists(st.integers(-4, 4), min_size=m, max_size=m), min_size=n, max_size=n)
        )
    )


def test_rank_matches_mod_p_oracle_on_medium_matrices():
    rng = random.Random(7)
    for _ in range(25):
        dense = random_low_rank(rng, 30, 40)
        assert rank(SparseMat.from_dense(dense)) == dense_rank_mod_p(dense)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rref_matches_dense_gauss_jordan(dense):
    _, _, red = rref(SparseMat.from_dense(dense))
    assert red.to_dense() == dense_rref(dense)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_of_transpose(dense):
    m = SparseMat.from_dense(dense)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_kernel_basis_is_kernel(dense):
    m = SparseMat.from_dense(dense)
    K = kernel_basis(m)
    assert K.nrows == nullity(m) == m.ncols - rank(m)
    for row in K.rows:
        assert m.apply(dict(row)) == {}
    assert rank(K) == K.nrows


@settings(max_examples=100, deadline=None)
@given(small_matrices(), st.randoms(use_true_random=False))
def test_rref_depends_only_on_row_space(dense, rnd):
    m = SparseMat.from_dense(dense)
    mixed = []
    for _ in range(len(dense)):
        c = [rnd.randint(-2, 2) for _ in dense]
        mixed.append([sum(c[k] * dense[k][j] for k in range(len(dense))) for j in range(len(dense[0]))])
    m2 = m.stack(SparseMat.from_dense(mixed))
    assert same_row_space(m, m2)
    for row in m2.rows:
        assert in_row_space(dict(row), rref(m)[2])


def test_in_row_space_rejects_outside_vector():
    red = rref(SparseMat.from_dense([[1, 1, 0], [0, 0, 1]]))[2]
    assert not in_row_space({0: 1}, red)
    assert in_row_space({0: 2, 1: 2, 2: -1}, red)


def test_matmul_and_identity():
    a = SparseMat.from_dense([[1, 2], [3, 4]])
    assert (a @ SparseMat.identity(2)).to_dense() == a.to_dense()
    assert (a @ a).to_dense() == [[7, 10], [15, 22]]
    with pytest.raises(ValueError):
        SparseMat.from_dense([[1, 2, 3]]) @ a


def test_from_rows_rejects_bad_column():
    with pytest.raises(ValueError):
        SparseMat.from_rows([{5: 1}], 3)


def test_weight_elimination_small_example():
    # span{x + y, y + z} with weights (0, 1, 2): initial space {x, y}, det weight 1
    rows = SparseMat.from_dense([[1, 1, 0], [0, 1, 1]])
    init, w = weight_elimination(rows, [0, 1, 2])
    assert w == 1
    assert init.to_dense() == [[1, 0, 0], [0, 1, 0]]
    assert initial_weights(rows, [0, 1, 2]) == [0, 1]


@settings(max_examples=100, deadline=None)
@given(small_matrices(5, 7), st.lists(st.integers(-5, 5), min_size=7, max_size=7), st.randoms(use_true_random=False))
def test_det_weight_is_basis_independent(dense, weights, rnd):
    m = SparseMat.from_dense(dense)
    red = rref(m)[2]
    if red.nrows == 0:
        return
    ncols = red.ncols
    w = weights[:ncols]
    n = red.nrows
    while True:
        g = [[Fraction(rnd.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if rank(SparseMat.from_dense(g)) == n:
            break
    other = SparseMat.from_dense(g) @ red
    assert weight_elimination(red, w)[1] == weight_elimination(other, w)[1]
    assert weight_elimination(red, w)[0] == weight_elimination(other, w)[0]


def test_weight_elimination_requires_independent_rows():
    with pytest.raises(NotABasisError):
        weight_elimination(SparseMat.from_dense([[1, 0], [2, 0]]), [0, 1])
