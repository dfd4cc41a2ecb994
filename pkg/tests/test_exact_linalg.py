"""Tests for the exact rational linear algebra layer."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import DimensionMismatchError, SpecSyntaxError
from app.core.exact_linalg import (
    Matrix,
    RowEchelon,
    format_scalar,
    kernel_basis,
    parse_scalar,
    quotient,
    rref,
    solve,
)

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows: int = 4, max_cols: int = 4) -> Matrix:
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    grid = draw(st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return Matrix.from_rows(grid, cols)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("3", Fraction(3)),
        ("-2/4", Fraction(-1, 2)),
        (" 7/1 ", Fraction(7)),
        (5, Fraction(5)),
        (Fraction(2, 3), Fraction(2, 3)),
    ],
)
def test_parse_scalar(text, expected: Fraction) -> None:
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", True, None])
def test_parse_scalar_rejects(bad) -> None:
    with pytest.raises(SpecSyntaxError):
        parse_scalar(bad)


def test_format_scalar_omits_unit_denominator() -> None:
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(-3, 6)) == "-1/2"


def test_rref_examples() -> None:
    reduced, pivots = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert reduced == Matrix.from_rows([[1, 2], [0, 0]])
    assert pivots == [0]

    reduced, pivots = rref(Matrix.identity(3))
    assert reduced == Matrix.identity(3)
    assert pivots == [0, 1, 2]

    reduced, pivots = rref(Matrix.zeros(2, 2))
    assert reduced.is_zero()
    assert pivots == []


def test_kernel_basis_examples() -> None:
    (vector,) = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert vector[0] == -vector[1] != 0
    assert kernel_basis(Matrix.identity(2)) == []
    assert len(kernel_basis(Matrix.zeros(1, 2))) == 2


def test_quotient_examples() -> None:
    assert quotient(2, [[1, -1]]).dim == 1
    space = quotient(3, [])
    assert space.dim == 3
    assert space.project({0: Fraction(2), 2: Fraction(5)}) == {0: Fraction(2), 2: Fraction(5)}
    assert quotient(2, [[1, 0], [0, 1]]).dim == 0


def test_quotient_kills_relations() -> None:
    relations = [[1, -1, 0], [0, 2, -2]]
    space = quotient(3, relations)
    assert space.dim == 1
    assert space.free == [2]
    for relation in relations:
        assert space.project({i: Fraction(v) for i, v in enumerate(relation) if v}) == {}
    # Every ambient basis vector is identified with the single free coordinate.
    assert space.project({0: Fraction(1)}) == {0: Fraction(1)}


def test_quotient_rejects_wrong_length() -> None:
    with pytest.raises(DimensionMismatchError):
        quotient(2, [[1, 2, 3]])


def test_solve_examples() -> None:
    x = solve(Matrix.from_rows([[1, 1]]), [2])
    assert x is not None and x[0] + x[1] == 2
    assert solve(Matrix.identity(2), [3, "1/2"]) == (Fraction(3), Fraction(1, 2))
    assert solve(Matrix.from_rows([[1], [1]]), [1, 2]) is None


def test_solve_rejects_wrong_rhs() -> None:
    with pytest.raises(DimensionMismatchError):
        solve(Matrix.identity(2), [1])


def test_matrix_arithmetic() -> None:
    a = Matrix.from_rows([[1, 2], [3, 4]])
    b = Matrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b) == Matrix.from_rows([[2, 1], [4, 3]])
    assert (a + b) - b == a
    assert a.transpose() == Matrix.from_rows([[1, 3], [2, 4]])
    assert a.apply([1, 1]) == (Fraction(3), Fraction(7))
    assert Matrix.from_rows([["1/2", 0]]).to_strings() == [["1/2", "0"]]
    with pytest.raises(DimensionMismatchError):
        a @ Matrix.identity(3)


def test_row_echelon_tracks_combinations() -> None:
    echelon = RowEchelon(3, track=True)
    assert echelon.add({0: Fraction(1), 1: Fraction(1)})
    assert echelon.add({1: Fraction(1), 2: Fraction(1)})
    assert not echelon.add({0: Fraction(1), 2: Fraction(-1)})
    residual, combination = echelon.express({0: Fraction(2), 2: Fraction(-2)})
    assert residual == {}
    assert combination == {0: Fraction(2), 1: Fraction(-2)}
    assert echelon.contains({0: Fraction(1), 1: Fraction(2), 2: Fraction(1)})
    assert echelon.rank == 2


def test_row_echelon_rejects_out_of_range() -> None:
    with pytest.raises(DimensionMismatchError):
        RowEchelon(2).add({5: Fraction(1)})


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent(m: Matrix) -> None:
    once, pivots = rref(m)
    twice, again = rref(once)
    assert twice == once
    assert again == pivots
    assert pivots == sorted(set(pivots))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m: Matrix) -> None:
    kernel = kernel_basis(m)
    assert m.cols == m.rank() + len(kernel)
    for vector in kernel:
        assert all(value == 0 for value in m.apply(vector))


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=3, max_cols=5))
def test_quotient_dimension_matches_rank(m: Matrix) -> None:
    space = quotient(m.cols, [list(row) for row in m.entries])
    assert space.dim == m.cols - m.rank()
