from fractions import Fraction
from itertools import permutations

import pytest

from centralcurve.core.errors import MismatchedShape, RankDeficient
from centralcurve.exact.matrix import (
    RationalMatrix,
    determinant,
    kernel_basis,
    primitive_integer_vector,
    rref,
    solve,
    submatrix_det,
)
from centralcurve.exact.rational import as_fraction, format_rational, parse_rational

K23 = [
    [1, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
]


def _cofactor_det(rows: list[list[Fraction]]) -> Fraction:
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, v in enumerate(rows[0]):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * v * _cofactor_det(minor)
    return total


@pytest.mark.parametrize(
    "text, expected",
    [("3", Fraction(3)), ("-2/6", Fraction(-1, 3)), (" 10000/11 ", Fraction(10000, 11)), ("0", Fraction(0))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1.5", "1/0", "x", "", "1e3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_floats_are_not_rationals():
    with pytest.raises(TypeError):
        as_fraction(0.1)


def test_format_rational_is_lowest_terms():
    assert format_rational(Fraction(4, -6)) == "-2/3"
    assert format_rational(Fraction(0)) == "0"


def test_rref_of_identity():
    r, pivots = rref(RationalMatrix.identity(3))
    assert r == RationalMatrix.identity(3)
    assert pivots == [0, 1, 2]


def test_k23_has_rank_four():
    assert RationalMatrix.from_rows(K23).rank() == 4


def test_rref_is_reached_by_row_operations():
    m = RationalMatrix.from_rows([["1/2", 3, -1, 4, 0], [2, "-1/3", 5, 1, 1], [1, 1, 1, 1, "7/5"]])
    r, pivots = rref(m)
    # every row of R lies in the row space of M and both have the same rank
    assert m.vstack(r).rank() == m.rank() == len(pivots)
    for k, p in enumerate(pivots):
        assert r.col(p) == tuple(Fraction(int(i == k)) for i in range(r.rows))


def test_kernel_of_all_ones_row():
    k = kernel_basis(RationalMatrix.from_rows([[1, 1, 1]]))
    assert k.rows == 2
    for i in range(k.rows):
        assert sum(k.row(i)) == 0


def test_kernel_of_disjoint_support_matrix_matches_known_basis():
    A = RationalMatrix.from_rows([[1, -1, 0, 0], [0, 1, 1, -1]])
    k = kernel_basis(A)
    known = RationalMatrix.from_rows([[1, 1, 0, 1], [0, 0, 1, 1]])
    assert k.rows == 2
    assert k.vstack(known).rank() == 2
    assert k.vstack(RationalMatrix.from_vector([0, 0, 1, 1])).rank() == 2


def test_kernel_rows_are_annihilated_and_independent():
    m = RationalMatrix.from_rows([[2, -1, "1/3", 0, 5], [1, 4, -2, "3/7", 1]])
    k = kernel_basis(m)
    assert k.rows == 3
    assert k.rank() == 3
    for i in range(k.rows):
        assert m.apply(k.row(i)) == (0, 0)


def test_rank_of_transpose():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, "1/2"]])
    assert m.rank() == m.transpose().rank() == 2


def test_submatrix_det_single_entry():
    m = RationalMatrix.from_rows([[5, "2/3"], [1, 1]])
    assert submatrix_det(m, [0], [1]) == Fraction(2, 3)


def test_first_four_columns_of_k23_are_independent():
    m = RationalMatrix.from_rows(K23)
    assert submatrix_det(m, [0, 1, 2, 3], [0, 1, 2, 3]) != 0


def test_submatrix_det_matches_cofactor_expansion():
    m = RationalMatrix.from_rows([[3, "1/2", -2, 7], [0, 4, 1, "-5/3"], [2, 2, "9/4", 1], [1, 0, 0, 1]])
    rows = [0, 2, 3]
    cols = [0, 1, 3]
    expected = _cofactor_det([[m[i, j] for j in cols] for i in rows])
    assert submatrix_det(m, rows, cols) == expected


def test_submatrix_det_is_alternating():
    m = RationalMatrix.from_rows([[1, 2, "1/3"], [0, -1, 4], [5, 1, 1]])
    base = submatrix_det(m, [0, 1, 2], [0, 1, 2])
    for perm in permutations(range(3)):
        sign = 1
        p = list(perm)
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    sign = -sign
        assert submatrix_det(m, [0, 1, 2], p) == sign * base


def test_determinant_of_large_integers_is_exact():
    big = 10**30
    m = RationalMatrix.from_rows([[big, 1], [1, big]])
    assert determinant(m) == big * big - 1


def test_solve_and_singular_system():
    m = RationalMatrix.from_rows([[2, 1], [1, 3]])
    assert solve(m, [3, 5]) == (Fraction(4, 5), Fraction(7, 5))
    with pytest.raises(RankDeficient):
        solve(RationalMatrix.from_rows([[1, 2], [2, 4]]), [1, 2])


def test_mismatched_shapes():
    with pytest.raises(MismatchedShape):
        RationalMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(MismatchedShape):
        RationalMatrix.identity(2) @ RationalMatrix.identity(3)


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(-1, 2), 0, Fraction(3, 4)]) == (2, 0, -3)
    with pytest.raises(ValueError):
        primitive_integer_vector([0, 0])
