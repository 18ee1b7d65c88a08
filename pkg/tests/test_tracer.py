import io
import math
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from centralcurve.core.errors import NewtonDivergence
from centralcurve.core.types import EndpointKind, Side, parse_signs
from centralcurve.geometry.arrangement import vertices
from centralcurve.pathtrace.controller import TraceController
from centralcurve.pathtrace.recorder import TraceCsvRecorder, trace_header
from centralcurve.pathtrace.tracer import (
    classify_vertex,
    level_crossings,
    solve_at_lambda,
    trace_region,
    turn_angle,
)

POSITIVE = parse_signs("++++++")


@pytest.fixture(scope="module")
def hexagon_trace(hexagon):
    return trace_region(hexagon, POSITIVE)


def test_turn_angle():
    u = np.array([1.0, 0.0])
    assert turn_angle(u, u) == 0.0
    assert turn_angle(u, np.array([0.0, 1.0])) == pytest.approx(math.pi / 2)
    assert turn_angle(u, -u) == pytest.approx(math.pi)
    tiny = np.array([math.cos(1e-9), math.sin(1e-9)])
    assert turn_angle(u, tiny) == pytest.approx(1e-9, rel=1e-6)


def test_hexagon_path_runs_from_center_to_optimum(hexagon_trace):
    t = hexagon_trace
    assert t.endpoint_start.kind is EndpointKind.ANALYTIC_CENTER
    assert t.endpoint_end.kind is EndpointKind.VERTEX
    assert t.endpoint_end.basis == (0, 1, 4, 5)
    assert t.endpoint_end.label == "{1,2,5,6}"
    np.testing.assert_allclose(t.points[-1].x, [2, 1, 0, 0, 1, 2], atol=1e-6)


def test_hexagon_path_points_are_central(hexagon, hexagon_trace):
    lams = [abs(p.lam) for p in hexagon_trace.points]
    assert all(a > b for a, b in zip(lams, lams[1:]))
    for p in hexagon_trace.points:
        assert np.all(p.x > 0)
        assert p.residual <= 1e-10
        assert np.linalg.norm(p.tangent) == pytest.approx(1.0)
        np.testing.assert_allclose(p.x * p.s, p.lam, rtol=1e-8)
        assert p.duality_gap == pytest.approx(hexagon.n * p.lam, rel=1e-8)


def test_objective_improves_along_the_path(hexagon, hexagon_trace):
    c = hexagon.arrays.c
    values = [float(p.x @ c) for p in hexagon_trace.points]
    assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(7.0, abs=1e-6)


def test_level_set_is_crossed_once(hexagon, hexagon_trace):
    c = hexagon.arrays.c
    first = float(hexagon_trace.points[0].x @ c)
    last = float(hexagon_trace.points[-1].x @ c)
    assert level_crossings([hexagon_trace], c, (first + last) / 2) == 1


def test_opposite_cost_ends_at_another_vertex(hexagon, hexagon_trace):
    t = trace_region(hexagon, POSITIVE, cost_sign=-1)
    assert t.endpoint_end.kind is EndpointKind.VERTEX
    assert t.endpoint_end.basis != hexagon_trace.endpoint_end.basis
    assert all(p.lam < 0 for p in t.points)
    assert t.label == "++++++ (-c)"


def test_solve_at_lambda(hexagon, hexagon_trace):
    p = solve_at_lambda(hexagon, POSITIVE, 1.0, hexagon_trace.points[0])
    assert p.residual <= 1e-10
    np.testing.assert_allclose(p.x * p.s, 1.0, rtol=1e-8)
    with pytest.raises(ValueError):
        solve_at_lambda(hexagon, POSITIVE, 0.0, p)


def test_empty_region_is_rejected(hexagon):
    with pytest.raises(NewtonDivergence):
        trace_region(hexagon, parse_signs("---+++"))


def test_refined_trace_has_more_points(hexagon_trace):
    finer = hexagon_trace.refine(0.01)
    assert len(finer.points) > len(hexagon_trace.points)
    assert finer.endpoint_end.basis == hexagon_trace.endpoint_end.basis


def test_classify_vertex(hexagon):
    candidates = vertices(hexagon)
    end = classify_vertex(np.array([2.0, 1.0, 0.0, 0.0, 1.0, 2.0 + 1e-9]), candidates, 1e-6)
    assert end.kind is EndpointKind.VERTEX
    far = classify_vertex(np.array([1.0, 1.0, 1.0, 1.0, 1.0, 1.0]), candidates, 1e-6)
    assert far.kind is EndpointKind.UNCLASSIFIED
    assert classify_vertex(np.zeros(6), {}, 1e-6).kind is EndpointKind.UNCLASSIFIED


def test_csv_recorder(hexagon, hexagon_trace):
    buffer = io.StringIO()
    recorder = TraceCsvRecorder(buffer, hexagon.n, hexagon.d)
    recorder.append(hexagon_trace)
    frame = pd.read_csv(io.StringIO(buffer.getvalue()))
    assert list(frame.columns) == trace_header(hexagon.n, hexagon.d)
    assert len(frame) == len(hexagon_trace.points)
    assert frame["turn_angle"].iloc[0] == 0.0
    assert frame["turn_angle"].max() <= 0.05 + 1e-12
    np.testing.assert_allclose(frame["x_1"].to_numpy(), [p.x[0] for p in hexagon_trace.points])


@pytest.mark.slow
def test_controller_traces_every_bounded_region(hexagon):
    controller = TraceController(hexagon, Side.PRIMAL)
    traces = controller.run()
    assert not controller.failures
    assert len(controller.regions) == 7
    assert len(traces) == 14
    for t in traces:
        assert t.endpoint_start.kind is EndpointKind.ANALYTIC_CENTER
        assert t.endpoint_end.kind is EndpointKind.VERTEX


@pytest.mark.slow
def test_dtz_dual_path(dtz):
    t = trace_region(dtz, POSITIVE, side=Side.DUAL)
    assert t.endpoint_start.kind is EndpointKind.ANALYTIC_CENTER
    assert t.endpoint_end.kind is EndpointKind.VERTEX
    np.testing.assert_allclose(t.points[0].y, [-0.027978, 0.778637], atol=1e-4)
    optimum = [Fraction(-599700011, 1800660000), Fraction(-519989, 600220000)]
    np.testing.assert_allclose(t.points[-1].y, [float(v) for v in optimum], atol=1e-6)
