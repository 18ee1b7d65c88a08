"""
Cross-checks between the exact predictions and the numeric traces of the
primal side of one instance.
"""
import logging
from dataclasses import dataclass
from typing import Any

import pandas as pd

from centralcurve.algebra.curve_ideal import curve_ideal_generators, sheet_generators
from centralcurve.algebra.polynomial import variable_names
from centralcurve.analysis.common import InstanceAnalysis
from centralcurve.analysis.curvature import curvature_report
from centralcurve.analysis.invariants import invariant_report
from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import CentralCurveError, DegenerateCost
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import EndpointKind, Side
from centralcurve.pathtrace.controller import TraceController
from centralcurve.pathtrace.tracer import CurveTrace, generator_residual, residual_on_generators

logger = logging.getLogger(__name__)

CHECKS = ("mobius-regions", "center-membership", "endpoints", "ideal-residual", "curvature-bounds")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


class Verification(InstanceAnalysis):
    def __init__(self, instance: LPInstance, settings: Settings = DEFAULT_SETTINGS, refine: bool = True) -> None:
        self.instance = instance
        self.settings = settings
        self.refine = refine
        self.report = invariant_report(instance)
        self.controller = TraceController(instance, Side.PRIMAL, settings)
        self.traces: list[CurveTrace] = []
        self.results: list[CheckResult] = []

    # --- individual checks ------------------------------------------------------------

    def _mobius_regions(self) -> CheckResult:
        count = sum(r.bounded for r in self.controller.arrangement)
        return CheckResult(
            "mobius-regions",
            count == self.report.mobius,
            f"|mu(A)| = {self.report.mobius}, bounded regions = {int(count)}",
        )

    def _center_membership(self) -> CheckResult:
        xs = variable_names("x", self.instance.n)
        gens = sheet_generators(self.instance.A, xs)
        worst, where = 0.0, "-"
        for region in self.controller.regions:
            if region.analytic_center is None:
                continue
            value = generator_residual(dict(zip(xs, region.analytic_center)), gens)
            if value > worst:
                worst, where = value, region.label
        return CheckResult(
            "center-membership",
            worst <= self.settings.verify_tol,
            f"{len(gens)} sheet generators, worst residual {worst:.2e} at {where}",
        )

    def _endpoints(self) -> CheckResult:
        if any(w.startswith("degenerate-cost") for w in self.report.warnings):
            # cᵀx is constant on the affine space, every path stays at its center
            return CheckResult("endpoints", not self.controller.failures, "skipped: degenerate cost")
        bad = [
            t.label
            for t in self.traces
            if t.endpoint_start.kind is not EndpointKind.ANALYTIC_CENTER or t.endpoint_end.kind is not EndpointKind.VERTEX
        ]
        bad += [f"{f.label}: {f.message}" for f in self.controller.failures]
        detail = f"{len(self.traces)} traces" + (f", failing: {'; '.join(bad)}" if bad else ", all center-to-vertex")
        return CheckResult("endpoints", not bad, detail)

    def _ideal_residual(self) -> CheckResult:
        try:
            gens = curve_ideal_generators(self.instance)
        except DegenerateCost as err:
            return CheckResult("ideal-residual", True, f"skipped: {err}")
        worst, where = 0.0, "-"
        for t in self.traces:
            for p in t.points:
                value = residual_on_generators(p, gens)
                if value > worst:
                    worst, where = value, f"{t.label} at lambda={p.lam:.3e}"
        return CheckResult(
            "ideal-residual",
            worst <= self.settings.verify_tol,
            f"{len(gens)} generators, worst residual {worst:.2e} ({where})",
        )

    def _curvature_bounds(self) -> CheckResult:
        report = curvature_report(
            self.instance, Side.PRIMAL, self.traces, self.report, self.settings, refine=self.refine
        )
        bad = [r for r in report.regions if not r.ok]
        average = "n/a" if report.average is None else f"{report.average:.6f}"
        detail = f"average {average} vs bound {report.average_bound}·pi"
        if bad:
            detail += "; over bound: " + ", ".join(f"{r.curvature}" for r in bad)
        return CheckResult("curvature-bounds", report.ok, detail)

    # --- pipeline ---------------------------------------------------------------------------

    def run(self) -> list[CheckResult]:
        if self.instance.n == self.instance.d:
            point = CheckResult("mobius-regions", self.report.mobius == 1, f"|mu(A)| = {self.report.mobius}, d = n")
            skipped = [CheckResult(name, True, "skipped: the feasible set is a point") for name in CHECKS[1:]]
            return [point] + skipped

        self.traces = self.controller.run()
        results = []
        for check in (
            self._mobius_regions,
            self._center_membership,
            self._endpoints,
            self._ideal_residual,
            self._curvature_bounds,
        ):
            try:
                result = check()
            except CentralCurveError as err:
                result = CheckResult(check.__name__.lstrip("_").replace("_", "-"), False, f"error: {err}")
            logger.info("%s: %s %s (%s)", self.instance.name, result.name, "ok" if result.passed else "FAIL", result.detail)
            results.append(result)
        return results

    def analyze(self) -> dict[str, Any]:
        results = self.results = self.run()
        return {
            "name": self.instance.name,
            "ok": all(r.passed for r in results),
            "warnings": list(self.report.warnings),
            "checks": [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        }


def verification_table(results: list[CheckResult]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "check": [r.name for r in results],
            "status": ["ok" if r.passed else "FAIL" for r in results],
            "detail": [r.detail for r in results],
        }
    )
