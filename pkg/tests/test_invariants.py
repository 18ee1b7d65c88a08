import json
from fractions import Fraction

import pytest

from centralcurve.analysis.invariants import gauss_bound, genus, invariant_report
from centralcurve.analysis.matroid import uniform_h_vector
from centralcurve.core.instance import LPInstance

from conftest import load_example, random_instance


def test_generic_3x6(generic_3x6):
    report = invariant_report(generic_3x6)
    assert report.h_vector == uniform_h_vector(4, 6) == [1, 2, 3, 4]
    assert report.degree_primal == report.generic_degree_primal == 10
    assert report.genus_primal == 11
    assert report.gauss_bound_primal == 40
    assert report.mobius == 10
    assert report.uniform_primal
    assert report.plucker_primal
    assert not report.warnings


def test_klee_minty(klee_minty):
    report = invariant_report(klee_minty)
    assert report.h_vector == [1, 2, 3, 3]
    assert report.degree_primal == 9
    assert report.gauss_bound_primal == 34
    assert report.mobius == 5
    assert report.avg_curvature_bound_primal == Fraction(34, 5)
    assert report.h_within_uniform_bounds
    assert not report.uniform_primal
    assert report.plucker_primal is None


def test_moment_curve(moment_curve):
    report = invariant_report(moment_curve)
    assert report.h_vector == [1, 2, 3]
    assert report.gauss_bound_primal == 16
    assert report.degree_primal == 6


def test_hexagon_is_a_quintic(hexagon):
    report = invariant_report(hexagon)
    assert report.degree_primal == 5
    assert report.mobius == 7


def test_bidegree_sums_to_generic_total(generic_3x6):
    report = invariant_report(generic_3x6)
    n, d = report.n, report.d
    assert report.bidegree == (report.generic_degree_primal, report.generic_degree_dual)
    assert sum(report.bidegree) == report.generic_degree_primal + report.generic_degree_dual
    assert report.generic_degree_dual == 10 and (n, d) == (6, 3)


def test_formulas():
    assert genus([1, 2, 3, 4]) == 11
    assert gauss_bound([1, 2, 3, 3]) == 34
    assert genus([1]) == 0


def test_degenerate_cost_warns():
    inst = LPInstance.from_data([[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]], [1, 2], [2, 3, 4, 5, 6], name="flat")
    report = invariant_report(inst)
    assert any(w.startswith("degenerate-cost") for w in report.warnings)
    assert report.degree_primal == report.mobius


def test_zero_rhs_warns_on_dual_side():
    inst = LPInstance.from_data([[1, -1, 0], [0, 1, -1]], [0, 0], [1, 2, -3], name="cone")
    report = invariant_report(inst)
    assert any(w.startswith("degenerate-dual") for w in report.warnings)


def test_square_instance_has_point_curve():
    report = invariant_report(load_example("identity2"))
    assert report.mobius == 1
    assert report.mobius_dual == 0


def test_json_uses_exact_pi_multiples(klee_minty):
    doc = invariant_report(klee_minty).to_json()
    assert doc["avg_curvature_bound_primal"] == {"coeff": "34/5", "unit": "pi"}
    assert doc["generic"]["avg_curvature_bound_primal"] == {"coeff": "4", "unit": "pi"}
    assert doc["bidegree"][0] == 9
    json.dumps(doc)


@pytest.mark.parametrize("d, n", [(2, 5), (3, 6), (2, 6)])
def test_random_instances_respect_generic_bounds(rng, d, n):
    report = invariant_report(random_instance(rng, d, n))
    assert report.h_within_uniform_bounds
    assert report.degree_primal <= report.generic_degree_primal
    assert report.gauss_bound_primal <= report.generic_gauss_bound_primal
