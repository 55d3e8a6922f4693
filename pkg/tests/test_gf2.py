import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsx.gf2 import Gf2Matrix, gf2_nullity, gf2_rank, kernel_basis, row_reduce, span
from oracles import naive_rank


def matrices(max_dim=12):
    return st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=0, max_size=max_dim).map(
            lambda rows: Gf2Matrix(tuple(rows), c)))


def test_small_cases():
    assert gf2_rank(Gf2Matrix.zeros(3, 3)) == 0
    assert gf2_rank(Gf2Matrix.identity(3)) == 3
    assert gf2_rank(Gf2Matrix.from_lists([[1, 1], [1, 1]])) == 1
    assert gf2_nullity(Gf2Matrix.zeros(2, 3)) == 3
    assert gf2_nullity(Gf2Matrix.identity(3)) == 0
    assert gf2_nullity(Gf2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])) == 1


def test_empty_matrix():
    assert gf2_rank(Gf2Matrix((), 0)) == 0
    assert gf2_rank(Gf2Matrix((), 4)) == 0


def test_stray_bits_rejected():
    with pytest.raises(ValueError):
        Gf2Matrix((0b100,), 2)


@settings(max_examples=300)
@given(matrices())
def test_rank_matches_span_oracle(m):
    assert gf2_rank(m) == naive_rank(m.rows, m.ncols)
    assert gf2_rank(m) <= min(m.nrows, m.ncols)
    assert gf2_rank(m) + gf2_nullity(m) == m.ncols


@settings(max_examples=200)
@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariances(m, rnd):
    r = gf2_rank(m)
    assert gf2_rank(m.transpose()) == r
    rows = list(m.rows)
    rnd.shuffle(rows)
    assert gf2_rank(Gf2Matrix(tuple(rows), m.ncols)) == r
    perm = list(range(m.ncols))
    rnd.shuffle(perm)
    assert gf2_rank(m.submatrix(range(m.nrows), perm)) == r
    if len(rows) >= 2:
        rows[0] ^= rows[1]
        assert gf2_rank(Gf2Matrix(tuple(rows), m.ncols)) == r


def test_rank_leaves_input_untouched():
    m = Gf2Matrix.from_lists([[1, 1, 0], [1, 1, 0], [0, 1, 1]])
    before = m.rows
    gf2_rank(m)
    row_reduce(m)
    assert m.rows == before


@settings(max_examples=200)
@given(matrices())
def test_kernel_basis(m):
    basis = kernel_basis(m)
    assert len(basis) == gf2_nullity(m)
    for x in span(basis):
        assert all(bin(r & x).count("1") % 2 == 0 for r in m.rows)


def test_row_reduce_pivots():
    rref, pivots = row_reduce(Gf2Matrix.from_lists([[0, 1, 1], [1, 1, 0]]))
    assert pivots == [0, 1]
    assert rref.to_lists()[:2] == [[1, 0, 1], [0, 1, 1]]


def test_random_large_rank_consistency():
    rng = random.Random(5)
    for _ in range(50):
        c = rng.randint(20, 64)
        rows = tuple(rng.getrandbits(c) for _ in range(rng.randint(1, 40)))
        m = Gf2Matrix(rows, c)
        assert gf2_rank(m) == gf2_rank(m.transpose())
