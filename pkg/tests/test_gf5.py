import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf5lat.gf5 import LinearCode, dot, dual_code, is_self_dual, is_self_orthogonal, puncture, rank, rref, weight
from gf5lat.codes import (
    RowParseError,
    four_negacirculant_code,
    negacirculant,
    negacirculant_closed_form,
    parse_first_row,
    quasi_twisted_code,
)

from conftest import gf5_codes, gf5_matrices


def test_rref_small_example():
    r = rref([[2, 4, 1], [1, 2, 3]])
    # 2*(1,2,3) = (2,4,1), so the rank is 1
    assert r.rank == 1
    assert r.pivots == (0,)
    assert r.matrix.tolist() == [[1, 2, 3], [0, 0, 0]]


@given(gf5_matrices())
@settings(max_examples=100, deadline=None)
def test_rref_row_space_and_shape(m):
    r = rref(m)
    mat = r.matrix.astype(np.int64)
    assert mat.shape == m.shape
    for i, c in enumerate(r.pivots):
        col = mat[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1
    assert not mat[r.rank :].any()
    # same row space: stacking adds no rank
    assert rank(np.vstack([m, mat])) == r.rank


def test_weight_and_dot():
    assert weight([0, 3, 0, 4]) == 2
    assert dot([1, 2, 3], [4, 4, 4]) == (4 + 8 + 12) % 5


@given(gf5_codes())
@settings(max_examples=60, deadline=None)
def test_dual_dimension_and_orthogonality(code):
    d = dual_code(code)
    assert d.k == code.n - code.k
    g = code.generator.astype(np.int64)
    h = d.generator.astype(np.int64)
    if d.k:
        assert not ((g @ h.T) % 5).any()
    assert dual_code(d) == code


def test_self_dual_example():
    # (1, 2) is orthogonal to itself: 1 + 4 = 5
    c = LinearCode([[1, 2]])
    assert is_self_orthogonal(c) and is_self_dual(c)
    assert not is_self_dual(LinearCode([[1, 1]]))


def test_code_membership_and_equality():
    c = LinearCode([[1, 0, 2], [0, 1, 3]])
    assert [1, 1, 0] in c
    assert [1, 1, 1] not in c
    assert LinearCode([[1, 1, 0], [0, 1, 3]]) == c
    assert len(list(c.codewords())) == 25


def test_puncture_removes_coordinate():
    c = LinearCode([[1, 0, 2, 1], [0, 1, 3, 4]])
    p = puncture(c, 2)
    assert p.n == 3 and p.k == 2
    assert [1, 0, 1] in p
    with pytest.raises((ValueError, IndexError)):
        puncture(c, 4)


@pytest.mark.parametrize("text,entries", [
    ("(10033)", (1, 0, 0, 3, 3)),
    ("(1,0,0,3,3)", (1, 0, 0, 3, 3)),
    (" (4 3 2) ", (4, 3, 2)),
])
def test_parse_first_row(text, entries):
    assert parse_first_row(text).entries == entries


@pytest.mark.parametrize("text,pos", [
    ("1003)", 0),
    ("(1003", 4),
    ("(105)", 3),
    ("(1,,2)", 3),
    ("(1,2,)", 5),
    ("(1a2)", 2),
    ("()", 1),
])
def test_parse_first_row_errors(text, pos):
    with pytest.raises(RowParseError) as e:
        parse_first_row(text)
    assert e.value.position == pos


@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
def test_negacirculant_matches_closed_form(row):
    assert np.array_equal(negacirculant(row), negacirculant_closed_form(row))


def test_negacirculant_shape():
    m = negacirculant([1, 2, 3])
    assert m.tolist() == [[1, 2, 3], [2, 1, 2], [3, 2, 1]]


def test_quasi_twisted_dimensions():
    c = quasi_twisted_code("(1,2,3,4)")
    assert (c.n, c.k) == (8, 4)
    c4 = four_negacirculant_code("(123)", "(401)")
    assert (c4.n, c4.k) == (12, 6)
    with pytest.raises(ValueError):
        four_negacirculant_code("(12)", "(401)")
