from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import np_rank, span_rank

from isomat.gf2 import (
    Gf2Matrix,
    XorBasis,
    express,
    is_nonsingular,
    principal_submatrix,
    rank,
    rank_of_words,
    rref,
    row_space_key,
    subset_ranks,
)

P3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    data = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Gf2Matrix.from_rows(data, ncols=c)


def is_rref(m: Gf2Matrix, pivots: list[int]) -> bool:
    nonzero = [r for r in m.rows if r]
    if len(nonzero) != len(pivots) or list(m.rows[: len(pivots)]) != nonzero:
        return False
    for i, p in enumerate(pivots):
        if m.rows[i] & ((1 << p) - 1) or not (m.rows[i] >> p) & 1:
            return False
        if any((m.rows[k] >> p) & 1 for k in range(m.nrows) if k != i):
            return False
    return pivots == sorted(set(pivots))


def test_rank_examples():
    assert rank(Gf2Matrix.identity(3)) == 3
    assert rank(Gf2Matrix.zeros(2, 4)) == 0
    assert rank(Gf2Matrix.from_rows(P3)) == 2 == np_rank(P3)


def test_rref_examples():
    m, piv = rref(Gf2Matrix.identity(3))
    assert m == Gf2Matrix.identity(3) and piv == [0, 1, 2]
    m, piv = rref(Gf2Matrix.from_rows([[1, 1], [1, 1]]))
    assert m.to_lists() == [[1, 1], [0, 0]] and piv == [0]
    m, piv = rref(Gf2Matrix.zeros(2, 3))
    assert m == Gf2Matrix.zeros(2, 3) and piv == []


def test_principal_submatrix_examples():
    a = Gf2Matrix.from_rows(P3)
    empty = principal_submatrix(a, [])
    assert (empty.nrows, empty.ncols) == (0, 0)
    assert is_nonsingular(empty) and rank(empty) == 0
    assert principal_submatrix(a, range(3)) == a
    assert principal_submatrix(a, [0, 2]).to_lists() == [[0, 0], [0, 0]]
    with pytest.raises(IndexError):
        principal_submatrix(a, [3])


def test_rank_equals_pivots_exhaustive_small():
    for r, c in itertools.product(range(4), range(4)):
        for bits in range(1 << (r * c)):
            data = [[(bits >> (i * c + j)) & 1 for j in range(c)] for i in range(r)]
            m = Gf2Matrix.from_rows(data, ncols=c)
            red, piv = rref(m)
            assert rank(m) == len(piv) == np_rank(np.array(data).reshape(r, c))
            assert is_rref(red, piv)


@given(matrices())
def test_rref_idempotent_and_row_equivalent(m):
    red, piv = rref(m)
    assert rref(red) == (red, piv)
    assert row_space_key(red) == row_space_key(m)
    assert rank(m) <= min(m.nrows, m.ncols)


@given(matrices(), st.data())
def test_rank_row_moves(m, data):
    if m.nrows < 2:
        return
    i = data.draw(st.integers(0, m.nrows - 1))
    j = data.draw(st.integers(0, m.nrows - 1).filter(lambda k: k != i))
    rows = list(m.rows)
    rows[i], rows[j] = rows[j], rows[i]
    assert rank(Gf2Matrix(m.nrows, m.ncols, tuple(rows))) == rank(m)
    rows[i] ^= rows[j]
    assert rank(Gf2Matrix(m.nrows, m.ncols, tuple(rows))) == rank(m)


@given(matrices(max_rows=5, max_cols=5), st.data())
def test_principal_rank_bound(m, data):
    if m.nrows != m.ncols:
        m = Gf2Matrix.from_rows([[m[i, j] if j < m.ncols else 0 for j in range(m.nrows)] for i in range(m.nrows)], ncols=m.nrows)
    s = data.draw(st.sets(st.integers(0, max(m.nrows - 1, 0)), max_size=m.nrows)) if m.nrows else set()
    assert rank(principal_submatrix(m, s)) <= len(s)


@given(matrices())
def test_array_roundtrip_and_transpose(m):
    assert Gf2Matrix.from_array(m.to_array()) == m
    assert m.transpose().transpose() == m
    assert rank(m.transpose()) == rank(m)
    assert Gf2Matrix.from_columns(m.nrows, m.columns()) == m


def test_matrix_validation():
    with pytest.raises(ValueError):
        Gf2Matrix(2, 2, (0,))
    with pytest.raises(ValueError):
        Gf2Matrix(1, 2, (4,))
    with pytest.raises(IndexError):
        Gf2Matrix.identity(2)[2, 0]


@given(st.lists(st.integers(0, 63), max_size=8))
def test_rank_of_words_matches_span(words):
    assert rank_of_words(words) == span_rank(words)


@given(st.lists(st.integers(1, 63), max_size=6), st.integers(0, 63))
def test_xor_basis_and_express(words, v):
    b = XorBasis()
    indep = [w for w in words if b.add(w)]
    assert len(b) == span_rank(words)
    mask = express(indep, v)
    if b.contains(v):
        acc = 0
        for i, w in enumerate(indep):
            if (mask >> i) & 1:
                acc ^= w
        assert acc == v
    else:
        assert mask is None
    assert XorBasis(reversed(words)).key() == b.key()


@given(st.lists(st.integers(0, 15), max_size=6))
def test_subset_ranks(words):
    table = subset_ranks(words)
    for mask in range(1 << len(words)):
        assert table[mask] == span_rank([w for i, w in enumerate(words) if (mask >> i) & 1])
