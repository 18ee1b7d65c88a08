from fractions import Fraction

import numpy as np
import pytest

from centralcurve.algebra.univariate import (
    count_real_roots,
    count_real_roots_with_multiplicity,
    multiply,
    squarefree_decomposition,
)


def F(*values):
    return [Fraction(v) for v in values]


def test_sturm_counts_simple_cases():
    assert count_real_roots(F(-2, 0, 1)) == 2
    assert count_real_roots(F(1, 0, 1)) == 0
    assert count_real_roots(F(-2, 0, 1), 0, None) == 1


def test_sturm_with_double_root():
    p = F(2, -3, 0, 1)  # (x - 1)^2 (x + 2)
    assert count_real_roots(p) == 2
    assert count_real_roots_with_multiplicity(p) == 3
    assert count_real_roots(p, 0, 2) == 1
    assert count_real_roots(p, -3, 0) == 1
    assert sorted(k for _, k in squarefree_decomposition(p)) == [1, 2]


def test_interval_is_half_open():
    p = F(-1, 1)  # root at 1
    assert count_real_roots(p, 0, 1) == 1
    assert count_real_roots(p, 1, 2) == 0


def test_many_roots():
    # (x-1)(x-2)(x-3)(x-4)
    p = F(1)
    for r in (1, 2, 3, 4):
        p = [a - r * b for a, b in zip([Fraction(0)] + p, p + [Fraction(0)])]
    assert count_real_roots(p) == 4
    assert count_real_roots(p, Fraction(3, 2), Fraction(7, 2)) == 2


def from_roots(roots):
    p = F(1)
    for r in roots:
        p = multiply(p, [-Fraction(r), Fraction(1)])
    return p


@pytest.mark.parametrize("seed", range(10))
def test_root_counts_add_over_coprime_products(seed):
    rng = np.random.default_rng(seed)
    f = from_roots(int(v) for v in rng.choice(np.arange(-10, 11), size=int(rng.integers(1, 5)), replace=False))
    halves = rng.choice(np.arange(-10, 10), size=int(rng.integers(0, 4)), replace=False)
    g = from_roots(Fraction(2 * int(v) + 1, 2) for v in halves)
    g = multiply(g, F(int(rng.integers(1, 9)), 0, 1))  # no real roots
    assert count_real_roots(multiply(f, g)) == count_real_roots(f) + count_real_roots(g)
    assert count_real_roots(multiply(f, g), -3, 3) == count_real_roots(f, -3, 3) + count_real_roots(g, -3, 3)
