from fractions import Fraction

import numpy as np
import pytest

from centralcurve.algebra.curve_ideal import sheet_generators
from centralcurve.algebra.polynomial import variable_names
from centralcurve.analysis.invariants import invariant_report
from centralcurve.core.config import DEFAULT_SETTINGS
from centralcurve.core.errors import DegenerateCost, LimitExceeded
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import parse_signs
from centralcurve.geometry.arrangement import (
    analytic_centers,
    bounded_regions,
    disjoint_support_exists,
    enumerate_regions,
    interior_point,
    is_bounded,
    is_feasible,
    level_slice,
    vertex_pairs,
    vertices,
)
from centralcurve.geometry.barrier import kernel_frame, kkt_residual
from centralcurve.pathtrace.controller import trace_all_regions
from centralcurve.pathtrace.tracer import generator_residual, level_crossings

from conftest import random_instance


@pytest.mark.parametrize(
    "fixture, expected",
    [("hexagon", 7), ("klee_minty", 5), ("generic_3x6", 10), ("moment_curve", 4)],
)
def test_bounded_regions_match_mobius_number(request, fixture, expected):
    inst = request.getfixturevalue(fixture)
    assert len(bounded_regions(inst)) == expected == invariant_report(inst).mobius


def test_exhaustive_scan_finds_the_same_regions(hexagon):
    fast = enumerate_regions(hexagon)
    slow = enumerate_regions(hexagon, exhaustive=True)
    assert [r.sign_vector for r in fast] == [r.sign_vector for r in slow]


def test_region_limit(generic_3x6):
    with pytest.raises(LimitExceeded):
        enumerate_regions(generic_3x6, DEFAULT_SETTINGS.override(region_limit=5))


def test_positive_orthant_of_hexagon(hexagon):
    sign = parse_signs("++++++")
    assert is_feasible(hexagon, sign)
    assert is_bounded(hexagon, sign)
    x = interior_point(hexagon, sign)
    assert all(v > 0 for v in x)
    assert hexagon.A.apply(x) == hexagon.b


def test_sign_vector_of_empty_region(hexagon):
    # x1 + x2 + x3 = 3 rules out three negative coordinates
    assert not is_feasible(hexagon, parse_signs("---+++"))


def test_unbounded_regions_exist(klee_minty):
    regions = enumerate_regions(klee_minty)
    assert any(not r.bounded for r in regions)
    for r in regions:
        assert r.vertex_set


def test_generic_vertex_count(generic_3x6):
    points = vertices(generic_3x6)
    assert len(points) == 20
    for basis, x in points.items():
        assert generic_3x6.A.apply(x) == generic_3x6.b
        assert all(x[j] == 0 for j in range(6) if j not in basis)


def test_vertex_pairs_are_complementary(klee_minty):
    for pair in vertex_pairs(klee_minty):
        assert all(xi * si == 0 for xi, si in zip(pair.x, pair.s))
        s = [sum(klee_minty.A[i, j] * pair.y[i] for i in range(klee_minty.d)) - klee_minty.c[j] for j in range(6)]
        assert tuple(s) == pair.s


def test_disjoint_support_witness(disjoint_support):
    w = disjoint_support_exists(disjoint_support)
    assert w is not None
    assert (w.circuit, w.cocircuit) == ((2, 3), (0, 1))
    assert w.kernel_vector == (0, 0, 1, 1)
    assert w.rowspace_vector == (1, -1, 0, 0)


def test_generic_matrix_has_no_disjoint_support(generic_3x6):
    assert disjoint_support_exists(generic_3x6) is None


def test_analytic_centers_lie_on_the_sheets(hexagon):
    xs = variable_names("x", hexagon.n)
    gens = sheet_generators(hexagon.A, xs)
    frame = kernel_frame(hexagon.arrays.A)
    centers = analytic_centers(hexagon)
    assert len(centers) == 7
    for region, x in centers:
        assert np.all(np.asarray(region.sign_vector) * x > 0)
        assert np.allclose(hexagon.arrays.A @ x, hexagon.arrays.b)
        assert kkt_residual(frame, x) <= 1e-9
        assert generator_residual(dict(zip(xs, x)), gens) <= 1e-9


def test_level_slice_adds_the_cost_row(klee_minty):
    sliced = level_slice(klee_minty, Fraction(1, 2))
    assert sliced.d == klee_minty.d + 1
    assert list(sliced.b)[-1] == Fraction(1, 2)


def test_level_slice_needs_a_nonconstant_cost():
    flat = LPInstance.from_data([[1, 1, 1]], [1], [1, 1, 1])
    with pytest.raises(DegenerateCost):
        level_slice(flat, 1)


RANDOM_SHAPES = [(1, 4), (2, 4), (2, 5), (2, 6), (3, 6)]


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(25))
def test_random_bounded_regions_match_mobius_number(seed):
    d, n = RANDOM_SHAPES[seed % len(RANDOM_SHAPES)]
    inst = random_instance(np.random.default_rng(seed), d, n, generic=True)
    assert len(bounded_regions(inst)) == invariant_report(inst).mobius


@pytest.mark.parametrize("seed", range(10))
def test_random_analytic_centers_lie_on_the_sheets(seed):
    inst = random_instance(np.random.default_rng(100 + seed), 2, 5, generic=True)
    xs = variable_names("x", inst.n)
    gens = sheet_generators(inst.A, xs)
    frame = kernel_frame(inst.arrays.A)
    centers = analytic_centers(inst)
    assert len(centers) == invariant_report(inst).mobius
    for region, x in centers:
        assert np.all(np.asarray(region.sign_vector) * x > 0)
        assert kkt_residual(frame, x) <= 1e-9
        assert generator_residual(dict(zip(xs, x)), gens) <= 1e-9


def test_points_off_the_sheet_have_large_residuals(rng):
    inst = random_instance(rng, 2, 5, generic=True)
    xs = variable_names("x", inst.n)
    gens = sheet_generators(inst.A, xs)
    residuals = [generator_residual(dict(zip(xs, rng.uniform(0.5, 3.0, size=inst.n))), gens) for _ in range(100)]
    assert min(residuals) >= 1e-4


def random_levels(rng, inst, count=5):
    """Rational levels strictly inside the range of cᵀx over the vertices."""
    values = [sum(ci * xi for ci, xi in zip(inst.c, x)) for x in vertices(inst).values()]
    lo, hi = min(values), max(values)
    return [lo + (hi - lo) * Fraction(int(k), 97) for k in rng.integers(5, 93, size=count)]


@pytest.mark.parametrize("seed", range(3))
def test_level_slices_have_degree_many_bounded_regions(seed):
    rng = np.random.default_rng(200 + seed)
    inst = random_instance(rng, 2, 5, generic=True)
    degree = invariant_report(inst).degree_primal
    for c0 in random_levels(rng, inst):
        assert len(bounded_regions(level_slice(inst, c0))) == degree


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(3))
def test_traced_curve_meets_each_level_degree_times(seed):
    rng = np.random.default_rng(200 + seed)
    inst = random_instance(rng, 2, 5, generic=True)
    degree = invariant_report(inst).degree_primal
    traces = trace_all_regions(inst, include_unbounded=True)
    for c0 in random_levels(rng, inst):
        assert level_crossings(traces, inst.arrays.c, float(c0)) == degree
