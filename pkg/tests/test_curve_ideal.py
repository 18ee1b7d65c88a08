from fractions import Fraction

import numpy as np
import pytest

from centralcurve.algebra.curve_ideal import (
    circuit_polynomial,
    circuit_polynomial_det,
    circuit_vector,
    curve_ideal_generators,
    eliminate_linear,
    line_restriction_real_roots,
    linear_substitutions,
    planar_curve_poly,
    planar_line_product,
    renegar_derivative,
    sheet_generators,
)
from centralcurve.algebra.polynomial import SparsePolynomial, variable_names
from centralcurve.analysis.matroid import circuits, matroid_from_matrix
from centralcurve.core.errors import DegenerateCost, IdenticalPoints, NotACircuit
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side
from centralcurve.exact.matrix import RationalMatrix

from conftest import random_instance

XY = ("x1", "x2")
Y = ("y1", "y2")

HEXAGON_CURVE = (
    "3*x1^4*x2 + 5*x1^3*x2^2 - 2*x1*x2^4 - 3*x1^4 - 22*x1^3*x2 - 15*x1^2*x2^2 + 8*x1*x2^3"
    " + 2*x2^4 + 18*x1^3 + 45*x1^2*x2 - 12*x2^3 - 33*x1^2 - 22*x1*x2 + 22*x2^2 + 18*x1 - 12*x2"
)
HEXAGON_PRIME_QUARTIC = (
    "2*x1^4 + 4*x1^3*x2 + x1^2*x2^2 - x1*x2^3 - 12*x1^3 - 14*x1^2*x2 + x1*x2^2 + x2^3"
    " + 22*x1^2 + 10*x1*x2 - 5*x2^2 - 12*x1 + 6*x2"
)
DTZ_QUARTIC = (
    "2760518880000000000000000*y2^4 + 22783991895360000000000000*y1*y2^3"
    " - 1559398946696532000000000*y2^3 + 1688399343321073200000000*y1*y2^2"
    " + 87717009913470910818000*y2^2 - 3511691013758400000000000*y1^2*y2^2"
    " - 324621326759441931317*y2 + 11183216292449806548000*y1*y2"
    " + 2558474824415400000000*y1^2*y2 - 51358431801600000000000*y1^3*y2"
    " + 6337035495096700140*y1 + 77623920000000000000*y1^4 - 13856351760343620000*y1^2"
    " + 291589604847546655 - 38575873512000000000*y1^3"
)


def planar_primal_curve(instance: LPInstance) -> list[SparsePolynomial]:
    """Generators of the primal curve rewritten in the free coordinates x1, x2."""
    xs = variable_names("x", instance.n)
    subs = linear_substitutions(instance.A, instance.b, xs, keep=XY)
    out = []
    for g in curve_ideal_generators(instance):
        h = eliminate_linear(g, subs)
        if not h.is_zero():
            out.append(h)
    return out


def test_hexagon_circuit_vector(hexagon):
    L = hexagon.stacked_cost()
    assert circuits(matroid_from_matrix(L)) == [(0, 1, 2, 3, 4, 5)]
    assert circuit_vector(L, range(6)) == (2, -3, 1, -2, 3, -1)


def test_hexagon_substitutions(hexagon):
    subs = linear_substitutions(hexagon.A, hexagon.b, variable_names("x", 6), keep=XY)
    assert subs["x3"] == SparsePolynomial.parse("3 - x1 - x2", XY)
    assert subs["x4"] == SparsePolynomial.parse("2 - x1", XY)
    assert subs["x5"] == SparsePolynomial.parse("2 - x2", XY)
    assert subs["x6"] == SparsePolynomial.parse("x1 + x2 - 1", XY)


def test_hexagon_primal_quintic(hexagon):
    curve = planar_primal_curve(hexagon)
    assert len(curve) == 1
    assert curve[0].degree == 5
    assert curve[0].equal_up_to_scalar(SparsePolynomial.parse(HEXAGON_CURVE, XY))


def test_hexagon_prime_quintic_splits_off_a_line(hexagon_prime):
    curve = planar_primal_curve(hexagon_prime)
    expected = SparsePolynomial.parse("x2 - 1", XY) * SparsePolynomial.parse(HEXAGON_PRIME_QUARTIC, XY)
    assert len(curve) == 1
    assert curve[0].equal_up_to_scalar(expected)


def test_curve_passes_through_the_optimum():
    f = SparsePolynomial.parse(HEXAGON_CURVE, XY)
    # optimum (2, 1, 0, 0, 1, 2)
    assert f.evaluate([2, 1]) == 0


def test_determinant_and_kernel_forms_agree(rng):
    for L in (
        RationalMatrix.from_rows([[1, 1, 1, 0], [0, 1, 2, 3]]),
        random_instance(rng, 2, 5).stacked_cost(),
        random_instance(rng, 3, 6).stacked_cost(),
    ):
        for c in circuits(matroid_from_matrix(L)):
            assert circuit_polynomial(L, c) == circuit_polynomial_det(L, c)


def test_circuit_forms_vanish_on_reciprocals_of_row_space():
    L = RationalMatrix.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]])
    u = L.transpose().apply([Fraction(2), Fraction(1, 3)])
    point = [1 / v for v in u]
    for g in sheet_generators(L):
        assert g.evaluate(point) == 0


def test_not_a_circuit():
    L = RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(NotACircuit):
        circuit_vector(L, [0, 1])


def test_degenerate_cost_has_no_curve_ideal():
    inst = LPInstance.from_data([[1, 1, 1]], [1], [2, 2, 2])
    with pytest.raises(DegenerateCost):
        curve_ideal_generators(inst)


def test_dtz_planar_polynomial(dtz):
    quartic = SparsePolynomial.parse(DTZ_QUARTIC, Y)
    filtered = planar_curve_poly(dtz.A, dtz.b, dtz.c)
    assert filtered.degree == 4
    assert filtered.equal_up_to_scalar(quartic)
    full = planar_curve_poly(dtz.A, dtz.b, dtz.c, restrict_to_support=False)
    assert full.equal_up_to_scalar(SparsePolynomial.parse("y2 - 1", Y) * quartic)


def test_dtz_dual_ideal_in_y(dtz):
    gens = curve_ideal_generators(dtz, Side.DUAL, coordinates="y")
    assert len(gens) == 1
    assert gens[0].equal_up_to_scalar(SparsePolynomial.parse(DTZ_QUARTIC, Y))


@pytest.mark.parametrize("seed", [s if s < 4 else pytest.param(s, marks=pytest.mark.slow) for s in range(50)])
def test_renegar_derivative_of_line_product(seed):
    inst = random_instance(np.random.default_rng(seed), 2, 4 + seed % 4, generic=True)
    b1, b2 = inst.b
    lines = planar_line_product(inst.A, inst.b, inst.c)
    derived = renegar_derivative(lines, [0, -b2, b1])
    curve = planar_curve_poly(inst.A, inst.b, inst.c).homogenize("y0")
    assert derived.equal_up_to_scalar(curve)


def random_points(rng, count):
    """Affine points (1, p1, p2) with small rational coordinates."""

    def coordinate():
        return Fraction(int(rng.integers(-30, 31)), int(rng.integers(1, 13)))

    return [[1, coordinate(), coordinate()] for _ in range(count)]


@pytest.mark.parametrize("name", ["heptagon", "dtz"])
def test_planar_curve_is_hyperbolic(request, rng, name):
    inst = request.getfixturevalue(name)
    b1, b2 = inst.b
    f = planar_curve_poly(inst.A, inst.b, inst.c).homogenize("y0")
    e = [0, -b2, b1]
    for p in [[1, 0, 0], [1, Fraction(1, 3), Fraction(-2, 7)], [1, 5, 11]] + random_points(rng, 20):
        restriction = line_restriction_real_roots(f, p, e)
        assert restriction.at_infinity == 0
        assert restriction.real_roots_with_multiplicity == restriction.degree == f.degree


def test_line_restriction_counts_root_at_infinity():
    f = SparsePolynomial.parse("y1*y2", ("y0", "y1", "y2"))
    # one finite root at t = 0, one at the direction q itself
    r = line_restriction_real_roots(f, [1, 1, 0], [0, 0, 1])
    assert (r.degree, r.at_infinity, r.real_roots_with_multiplicity) == (2, 1, 2)
    with pytest.raises(IdenticalPoints):
        line_restriction_real_roots(f, [1, 1, 0], [2, 2, 0])
