from fractions import Fraction as F

import pytest

from centralcurve.core.errors import MismatchedShape
from centralcurve.exact.lp import LPStatus, maximize


def test_simplex_optimum_is_exact():
    # max x + 2y  s.t.  x + y + s1 = 4,  x + 3y + s2 = 6
    result = maximize([1, 2, 0, 0], [[1, 1, 1, 0], [1, 3, 0, 1]], [4, 6])
    assert result.status is LPStatus.OPTIMAL
    assert result.value == 5
    assert result.z[:2] == (F(3), F(1))


def test_simplex_detects_infeasibility():
    result = maximize([1, 1], [[1, 1], [1, 1]], [1, 2])
    assert result.status is LPStatus.INFEASIBLE


def test_simplex_detects_unboundedness():
    # x - y = 1 with x, y >= 0 and max x
    result = maximize([1, 0], [[1, -1]], [1])
    assert result.status is LPStatus.UNBOUNDED


def test_negative_right_hand_side_and_redundant_rows():
    result = maximize([F(-1), F(-1)], [[-1, -1], [-2, -2]], [-3, -6])
    assert result.status is LPStatus.OPTIMAL
    assert result.value == -3


def test_degenerate_problem_terminates():
    # Bland's rule keeps the classic degenerate cycling example finite
    c = [F(3, 4), -150, F(1, 50), -6, 0, 0, 0]
    rows = [
        [F(1, 4), -60, F(-1, 25), 9, 1, 0, 0],
        [F(1, 2), -90, F(-1, 50), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    result = maximize(c, rows, [0, 0, 1])
    assert result.status is LPStatus.OPTIMAL
    assert result.value == F(1, 20)


def test_shape_mismatch():
    with pytest.raises(MismatchedShape):
        maximize([1, 2], [[1]], [1])
