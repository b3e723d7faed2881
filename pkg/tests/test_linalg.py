from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from arthur_phi.linalg import (
    canonical_line,
    det,
    inverse,
    matmul,
    nullspace,
    primitive,
    rank,
    rref,
    solve,
)

small = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rank_and_nullspace():
    rows = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert rank(rows) == 2
    (v,) = nullspace(rows, 3)
    assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_rref_pivots():
    red, piv = rref([(0, 2), (1, 1)])
    assert piv == [0, 1]
    assert red == [(1, 0), (0, 1)] or [tuple(r) for r in red] == [(1, 0), (0, 1)]


def test_primitive_and_canonical_line():
    assert primitive((Fraction(1, 2), Fraction(3, 2))) == (1, 3)
    assert canonical_line((0, -2, 4)) == (0, 1, -2)


def test_solve_inconsistent_returns_none():
    assert solve([(1, 1), (2, 2)], [1, 3]) is None


@given(square(3))
def test_det_multiplicative_and_inverse(m):
    d = det(m)
    assert det(matmul(m, m)) == d * d
    if d:
        inv = inverse(m)
        assert [list(r) for r in matmul(m, inv)] == [[1 if i == j else 0 for j in range(3)] for i in range(3)]


@given(square(3))
def test_rank_nullity(m):
    assert rank(m) + len(nullspace(m, 3)) == 3
