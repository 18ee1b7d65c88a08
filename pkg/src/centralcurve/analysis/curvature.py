"""
Total curvature of traced central paths and planar inflection counts,
compared against the matroid bounds of the invariant report.

Total curvature is the arc length of the Gauss curve, measured as the sum
of angles between consecutive unit tangents. Traces carrying a `refine`
callback are re-traced with halved turning limits until the sum settles.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from centralcurve.analysis.common import InstanceAnalysis, pi_multiple
from centralcurve.analysis.invariants import InvariantReport, invariant_report
from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import AmbientNot2D, NotConverged
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side, format_signs
from centralcurve.pathtrace.controller import TraceController, TraceFailure
from centralcurve.pathtrace.tracer import CurveTrace, turn_angle

logger = logging.getLogger(__name__)

# slack on measured-versus-bound comparisons
BOUND_SLACK = 1e-3


def curve_tangents(trace: CurveTrace) -> list[np.ndarray]:
    """Unit tangents in curve coordinates (x primal, y dual), projected on the trace frame if any."""
    out = []
    for p in trace.points:
        n, d = len(p.x), len(p.y)
        t = p.tangent[n:n + d] if trace.side is Side.DUAL else p.tangent[:n]
        if trace.frame is not None:
            t = trace.frame.T @ t
        norm = np.linalg.norm(t)
        out.append(t / norm if norm > 0 else t)
    return out


def turning_angles(tangents: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([turn_angle(u, v) for u, v in zip(tangents, tangents[1:])])


def _sum_turning(trace: CurveTrace) -> float:
    return float(np.sum(turning_angles(curve_tangents(trace))))


@dataclass(frozen=True)
class CurvatureEstimate:
    value: float
    converged: bool
    history: tuple[float, ...]


def curvature_estimate(trace: CurveTrace, settings: Settings = DEFAULT_SETTINGS) -> CurvatureEstimate:
    """Turning-angle sum, refined level by level when the trace can be re-traced."""
    current = _sum_turning(trace)
    history = [current]
    if trace.refine is None:
        return CurvatureEstimate(current, True, tuple(history))
    max_turn = settings.max_turn
    for level in range(1, settings.refinement_levels + 1):
        max_turn /= 2.0
        refined = _sum_turning(trace.refine(max_turn))
        history.append(refined)
        logger.debug("%s: level %d (max turn %.2e) curvature %.9f", trace.label, level, max_turn, refined)
        if abs(refined - current) < settings.curvature_tol:
            return CurvatureEstimate(refined, True, tuple(history))
        current = refined
    return CurvatureEstimate(current, False, tuple(history))


# ----------------------------- Public API ---------------------------------

def total_curvature(trace: CurveTrace, settings: Settings = DEFAULT_SETTINGS) -> float:
    estimate = curvature_estimate(trace, settings)
    if not estimate.converged:
        raise NotConverged(
            f"Curvature of {trace.label} still moving after {settings.refinement_levels} refinements",
            estimate.value,
        )
    trace.total_turning = estimate.value
    return estimate.value


def inflection_floor(settings: Settings = DEFAULT_SETTINGS) -> float:
    """Cross products of consecutive unit tangents below this count as zero."""
    return max(settings.inflection_noise, 100.0 * settings.newton_tol)


def _count_sign_changes(tangents: Sequence[np.ndarray], noise: float) -> int:
    if any(len(t) != 2 for t in tangents):
        raise AmbientNot2D(f"Inflections need planar tangents, got dimension {len(tangents[0])}")
    signs = []
    for u, v in zip(tangents, tangents[1:]):
        cross = u[0] * v[1] - u[1] * v[0]
        if abs(cross) < noise * float(np.linalg.norm(u) * np.linalg.norm(v)):
            continue
        signs.append(1 if cross > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def branch_tangents(own: CurveTrace, opposite: CurveTrace | None = None) -> list[np.ndarray]:
    """
    Tangents along the real branch through one analytic center: the -c path
    walked back from its vertex to the center, then the c path. Both traces
    point toward decreasing |λ|, so the reversed half is negated.
    """
    tangents = curve_tangents(own)
    if opposite is None:
        return tangents
    return [-t for t in reversed(curve_tangents(opposite))] + tangents


def _stable_count(
    label: str,
    tangents_at: Callable[[float | None], list[np.ndarray]],
    refinable: bool,
    settings: Settings,
) -> int:
    noise = inflection_floor(settings)
    tangents = tangents_at(None)
    if tangents and len(tangents[0]) != 2:
        raise AmbientNot2D(f"Trace {label} lives in dimension {len(tangents[0])}, not 2")
    count = _count_sign_changes(tangents, noise)
    if not refinable:
        return count
    max_turn = settings.max_turn
    for _ in range(settings.refinement_levels):
        max_turn /= 2.0
        refined = _count_sign_changes(tangents_at(max_turn), noise)
        if refined == count:
            return count
        count = refined
    logger.warning("%s: inflection count did not stabilise, reporting %d", label, count)
    return count


def inflection_count(trace: CurveTrace, settings: Settings = DEFAULT_SETTINGS) -> int:
    """Sign changes of consecutive tangent cross products, stable across two refinement levels."""

    def tangents_at(max_turn: float | None) -> list[np.ndarray]:
        return curve_tangents(trace if max_turn is None else trace.refine(max_turn))

    return _stable_count(trace.label, tangents_at, trace.refine is not None, settings)


def branch_inflection_count(
    own: CurveTrace,
    opposite: CurveTrace | None,
    settings: Settings = DEFAULT_SETTINGS,
    refine: bool = True,
) -> int:
    """Inflections of the whole branch through a center, the junction counted once."""

    def tangents_at(max_turn: float | None) -> list[np.ndarray]:
        if max_turn is None:
            return branch_tangents(own, opposite)
        return branch_tangents(own.refine(max_turn), opposite.refine(max_turn) if opposite is not None else None)

    refinable = refine and own.refine is not None and (opposite is None or opposite.refine is not None)
    return _stable_count(format_signs(own.region_sign), tangents_at, refinable, settings)


@dataclass
class RegionCurvature:
    sign_vector: tuple[int, ...]
    curvature: float | None  # path of the objective itself (+c)
    curvature_opposite: float | None  # path of -c, exposed but not averaged
    converged: bool
    bound_pi_multiple: int
    inflections: int | None = None  # along the c path
    branch_inflections: int | None = None  # along the -c path reversed, then the c path
    status: str = "ok"

    @property
    def ok(self) -> bool:
        if self.curvature is None:
            return False
        within = self.curvature <= math.pi * self.bound_pi_multiple + BOUND_SLACK
        if self.inflections is not None:
            within = within and self.curvature <= math.pi * (self.inflections + 1) + BOUND_SLACK
        return within

    def to_json(self) -> dict[str, Any]:
        return {
            "sign_vector": format_signs(self.sign_vector),
            "curvature": self.curvature,
            "curvature_opposite": self.curvature_opposite,
            "converged": self.converged,
            "bound_pi_multiple": self.bound_pi_multiple,
            "inflections": self.inflections,
            "branch_inflections": self.branch_inflections,
            "status": self.status,
            "ok": self.ok,
        }


@dataclass
class CurvatureReport:
    name: str
    side: Side
    regions: list[RegionCurvature]
    gauss_bound: int
    average_bound: Fraction | None  # multiple of π
    planar: bool
    klein_bound: int | None = None
    failures: list[TraceFailure] = field(default_factory=list)

    @property
    def measured(self) -> list[float]:
        return [r.curvature for r in self.regions if r.curvature is not None]

    @property
    def total(self) -> float:
        return float(sum(self.measured))

    @property
    def average(self) -> float | None:
        return self.total / len(self.measured) if self.measured else None

    @property
    def inflection_total(self) -> int | None:
        if not self.planar:
            return None
        return sum(
            (r.branch_inflections if r.branch_inflections is not None else r.inflections) or 0 for r in self.regions
        )

    @property
    def average_ok(self) -> bool:
        if self.average is None or self.average_bound is None:
            return True
        return self.average <= math.pi * float(self.average_bound) + BOUND_SLACK

    @property
    def planar_average_ok(self) -> bool | None:
        if not self.planar or self.average is None:
            return None
        return self.average <= 2.0 * math.pi + BOUND_SLACK

    @property
    def klein_ok(self) -> bool | None:
        if self.klein_bound is None:
            return None
        return self.inflection_total <= self.klein_bound

    @property
    def ok(self) -> bool:
        return (
            all(r.ok for r in self.regions)
            and self.average_ok
            and self.planar_average_ok is not False
            and self.klein_ok is not False
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "side": self.side.value,
            "regions": [r.to_json() for r in self.regions],
            "total": self.total,
            "average": self.average,
            "gauss_bound": self.gauss_bound,
            "region_bound": pi_multiple(self.gauss_bound),
            "average_bound": pi_multiple(self.average_bound),
            "average_ok": self.average_ok,
            "planar": self.planar,
            "planar_average_bound": pi_multiple(2) if self.planar else None,
            "planar_average_ok": self.planar_average_ok,
            "inflection_total": self.inflection_total,
            "klein_bound": self.klein_bound,
            "klein_ok": self.klein_ok,
            "failures": [{"region": f.label, "message": f.message} for f in self.failures],
            "ok": self.ok,
        }


def curvature_report(
    instance: LPInstance,
    side: Side = Side.PRIMAL,
    traces: list[CurveTrace] | None = None,
    invariants: InvariantReport | None = None,
    settings: Settings = DEFAULT_SETTINGS,
    refine: bool = True,
) -> CurvatureReport:
    """
    One entry per bounded region: the curvature of the path for c (averaged)
    and for -c (reported only), checked against π·gauss_bound and, for
    planar curves, the inflection and Klein bounds.
    """
    invariants = invariants or invariant_report(instance)
    failures: list[TraceFailure] = []
    if traces is None:
        controller = TraceController(instance, side, settings)
        traces = controller.run()
        failures = list(controller.failures)

    if side is Side.DUAL:
        gauss, average_bound, degree = (
            invariants.gauss_bound_dual, invariants.avg_curvature_bound_dual, invariants.degree_dual
        )
        ambient = instance.d
    else:
        gauss, average_bound, degree = (
            invariants.gauss_bound_primal, invariants.avg_curvature_bound_primal, invariants.degree_primal
        )
        ambient = instance.n - instance.d
    planar = ambient == 2

    by_region: dict[tuple[int, ...], dict[int, CurveTrace]] = {}
    for t in traces:
        if t.bounded:
            by_region.setdefault(t.region_sign, {})[t.cost_sign] = t

    entries = []
    for sign in sorted(by_region, key=format_signs):
        pair = by_region[sign]
        own, opposite = pair.get(1), pair.get(-1)
        entry = RegionCurvature(sign, None, None, False, gauss)
        if own is not None:
            estimate = curvature_estimate(own, settings) if refine else CurvatureEstimate(_sum_turning(own), True, ())
            own.total_turning = estimate.value
            entry.curvature = estimate.value
            entry.converged = estimate.converged
            if planar:
                entry.inflections = (
                    inflection_count(own, settings)
                    if refine
                    else _count_sign_changes(curve_tangents(own), inflection_floor(settings))
                )
                entry.branch_inflections = branch_inflection_count(own, opposite, settings, refine)
        else:
            entry.status = "missing trace for c"
        if opposite is not None:
            entry.curvature_opposite = _sum_turning(opposite)
            opposite.total_turning = entry.curvature_opposite
        entries.append(entry)
        logger.info("%s region %s: curvature %s", instance.name, format_signs(sign), entry.curvature)

    return CurvatureReport(
        name=instance.name,
        side=side,
        regions=entries,
        gauss_bound=gauss,
        average_bound=average_bound,
        planar=planar,
        klein_bound=degree * (degree - 2) if planar else None,
        failures=failures,
    )


class CurvatureAnalysis(InstanceAnalysis):
    def __init__(self, instance: LPInstance, side: Side = Side.PRIMAL, settings: Settings = DEFAULT_SETTINGS) -> None:
        self.instance = instance
        self.side = side
        self.settings = settings

    def analyze(self) -> dict[str, Any]:
        return curvature_report(self.instance, self.side, settings=self.settings).to_json()
