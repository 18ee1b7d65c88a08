"""
Numerical continuation of the primal-dual central path

    A·x = b,   Aᵀy - s = c,   x_i·s_i = λ

inside one region of the arrangement. The path is followed in τ = log|λ|
from the analytic-center end (|λ| large) to the vertex end (|λ| small);
λ < 0 gives the central path of -c over the same region.

Each accepted point is corrected by primal-dual Newton on the square
system in scaled variables (ỹ, s̃) = (y, s)/κ, κ = |λ| for large |λ|, so
the Jacobian stays well conditioned at both ends of the path.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy import linalg

from centralcurve.algebra.polynomial import SparsePolynomial
from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import LeftRegion, NewtonDivergence
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Endpoint, EndpointKind, SignVector, Side, format_basis, format_signs
from centralcurve.geometry.arrangement import Region, interior_point, is_bounded, is_feasible, region_center, vertices
from centralcurve.geometry.barrier import barrier_point, kernel_frame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathPoint:
    lam: float  # λ; the name avoids the Python keyword
    x: np.ndarray
    y: np.ndarray
    s: np.ndarray
    tangent: np.ndarray  # unit (x, y, s) direction toward decreasing |λ|
    residual: float

    @property
    def duality_gap(self) -> float:
        return float(self.x @ self.s)


@dataclass
class CurveTrace:
    region_sign: SignVector
    points: list[PathPoint]
    endpoint_start: Endpoint
    endpoint_end: Endpoint
    side: Side = Side.PRIMAL
    cost_sign: int = 1
    bounded: bool = True
    frame: np.ndarray | None = field(default=None, repr=False)  # orthonormal columns for planar coordinates
    total_turning: float | None = None
    refine: Callable[[float], "CurveTrace"] | None = field(default=None, repr=False, compare=False)

    @property
    def label(self) -> str:
        return f"{format_signs(self.region_sign)}{'' if self.cost_sign > 0 else ' (-c)'}"

    def curve_points(self) -> np.ndarray:
        """Points in curve coordinates: x on the primal side, y on the dual side."""
        match self.side:
            case Side.DUAL:
                return np.array([p.y for p in self.points])
            case _:
                return np.array([p.x for p in self.points])


# --- the square system ----------------------------------------------------------------

class PathSystem:
    """Float data of one instance plus the Newton corrector and tangent formulas."""

    # steps shorter than this fraction of the Newton direction mean the region was left
    min_step: float = 1e-12

    def __init__(
        self,
        instance: LPInstance,
        sign: SignVector,
        settings: Settings = DEFAULT_SETTINGS,
        curve_map: np.ndarray | None = None,
    ) -> None:
        data = instance.arrays
        self.name = instance.name
        self.A, self.b, self.c = data.A, data.b, data.c
        self.d, self.n = self.A.shape
        self.sign = np.asarray(sign, dtype=float)
        self.settings = settings
        self.scale = instance.scale
        self.frame = kernel_frame(self.A)
        self.gram = linalg.cho_factor(self.A @ self.A.T) if self.d else None
        self.curve_map = curve_map

    # --- helpers ---------------------------------------------------------------------

    def kappa(self, lam: float) -> float:
        return abs(lam) if abs(lam) > self.settings.scaled_switch_factor * self.scale else 1.0

    def y_from_s(self, s: np.ndarray) -> np.ndarray:
        if self.gram is None:
            return np.zeros(0)
        return linalg.cho_solve(self.gram, self.A @ (s + self.c))

    def residual(self, x: np.ndarray, y: np.ndarray, s: np.ndarray, lam: float) -> float:
        k = self.kappa(lam)
        primal = np.max(np.abs(self.A @ x - self.b), initial=0.0) / (1.0 + np.max(np.abs(self.b), initial=0.0))
        dual = np.max(np.abs((self.A.T @ y - s - self.c) / k), initial=0.0) / (
            1.0 + np.max(np.abs(self.c), initial=0.0) / k
        )
        comp = np.max(np.abs(x * s - lam)) / abs(lam)
        return float(max(primal, dual, comp))

    def inside(self, x: np.ndarray) -> bool:
        return bool(np.all(self.sign * x > 0))

    # --- Newton corrector --------------------------------------------------------------

    def correct(self, x: np.ndarray, lam: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
        if not self.inside(x):
            raise LeftRegion(lam)
        n, d = self.n, self.d
        k = self.kappa(lam)
        s_sign = np.sign(lam) * self.sign
        st = (lam / x) / k
        yt = self.y_from_s(st * k) / k
        target = lam / k
        size = 2 * n + d
        for it in range(self.settings.newton_max_iter + 1):
            res = self.residual(x, yt * k, st * k, lam)
            if res <= self.settings.newton_tol:
                logger.debug("newton at lambda=%.3e converged in %d iterations (residual %.2e)", lam, it, res)
                return x, yt * k, st * k, res
            if it == self.settings.newton_max_iter:
                break
            J = np.zeros((size, size))
            J[:d, :n] = self.A
            J[d:d + n, n:n + d] = self.A.T
            J[d:d + n, n + d:] = -np.eye(n)
            J[d + n:, :n] = np.diag(st)
            J[d + n:, n + d:] = np.diag(x)
            F = np.concatenate([self.A @ x - self.b, self.A.T @ yt - st - self.c / k, x * st - target])
            lu = linalg.lu_factor(J)
            step = linalg.lu_solve(lu, -F)
            step += linalg.lu_solve(lu, -F - J @ step)  # one round of iterative refinement
            dx, dy, ds = step[:n], step[n:n + d], step[n + d:]
            alpha = min(1.0, self._max_step(self.sign, x, dx), self._max_step(s_sign, st, ds))
            if alpha < self.min_step:
                raise LeftRegion(lam)
            x, yt, st = x + alpha * dx, yt + alpha * dy, st + alpha * ds
        raise NewtonDivergence(f"Newton did not reach residual {self.settings.newton_tol:.1e}", lam=lam)

    def _max_step(self, sign: np.ndarray, v: np.ndarray, dv: np.ndarray) -> float:
        shrinking = sign * dv < 0
        if not np.any(shrinking):
            return 1.0
        return float(self.settings.fraction_to_boundary * np.min(-v[shrinking] / dv[shrinking]))

    # --- tangents ------------------------------------------------------------------------

    def velocity(self, x: np.ndarray, s: np.ndarray, lam: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        (dx, dy, ds)/dτ with τ = log|λ|.

        dx = N·H⁻¹·Nᵀx⁻¹ with H = NᵀX⁻²N. On the path Nᵀ(c + s) = 0, so
        Nᵀx⁻¹ = -Nᵀc/λ; that form has no cancellation near the analytic center.
        """
        N = self.frame
        inv = 1.0 / x
        if N.shape[1]:
            H = N.T @ (N * (inv ** 2)[:, None])
            dx = -(N @ linalg.solve(H, N.T @ self.c, assume_a="pos")) / lam
        else:
            dx = np.zeros(self.n)
        ds = s * (1.0 - dx * inv)
        dy = linalg.cho_solve(self.gram, self.A @ ds) if self.gram is not None else np.zeros(0)
        return dx, dy, ds

    def point(self, x: np.ndarray, y: np.ndarray, s: np.ndarray, lam: float, residual: float) -> PathPoint:
        dx, dy, ds = self.velocity(x, s, lam)
        t = -np.concatenate([dx, dy, ds])
        norm = np.linalg.norm(t)
        return PathPoint(lam, x, y, s, t / norm if norm > 0 else t, residual)

    def curve_tangent(self, p: PathPoint) -> np.ndarray:
        dx = p.tangent[: self.n]
        t = dx if self.curve_map is None else self.curve_map @ dx
        norm = np.linalg.norm(t)
        return t / norm if norm > 0 else t


def turn_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between two unit vectors, accurate for small angles."""
    return float(2.0 * math.atan2(np.linalg.norm(u - v), np.linalg.norm(u + v)))


# --- continuation --------------------------------------------------------------------------

class PathTracer:
    def __init__(self, system: PathSystem, cost_sign: int, max_turn: float | None = None) -> None:
        self.system = system
        self.cost_sign = 1 if cost_sign > 0 else -1
        self.settings = system.settings
        self.max_turn = max_turn if max_turn is not None else self.settings.max_turn

    def start(self, lam: float, x0: np.ndarray) -> PathPoint:
        sys = self.system
        guess = barrier_point(sys.A, sys.c, tuple(int(v) for v in sys.sign), lam, x0, self.settings, sys.frame).x
        x, y, s, res = sys.correct(guess, lam)
        return sys.point(x, y, s, lam, res)

    def run(self, start: PathPoint, lam_end: float, partial_ok: bool = False) -> list[PathPoint]:
        """Follow the path from `start` to |λ| = |lam_end|; returns the accepted points in order."""
        sys = self.system
        points = [start]
        tau = math.log(abs(start.lam))
        tau_end = math.log(abs(lam_end))
        direction = -1.0 if tau_end < tau else 1.0
        h = math.log(2.0)
        p = start
        prev_curve = sys.curve_tangent(p)
        while (tau_end - tau) * direction > 1e-14:
            step = min(h, abs(tau_end - tau))
            last = step == abs(tau_end - tau)
            tau_new = tau_end if last else tau + direction * step
            lam_new = lam_end if last else self.cost_sign * math.exp(tau_new)
            try:
                dx, _, _ = sys.velocity(p.x, p.s, p.lam)
                x_pred = p.x * np.exp(direction * step * dx / p.x)
                x, y, s, res = sys.correct(x_pred, lam_new)
                q = sys.point(x, y, s, lam_new, res)
                curve = sys.curve_tangent(q)
                turn = turn_angle(prev_curve, curve)
            except (LeftRegion, NewtonDivergence) as err:
                h = step / 2.0
                if h < self.settings.min_log_step:
                    if partial_ok:
                        logger.warning("%s: stopping early at lambda=%.3e: %s", sys.name, p.lam, err)
                        return points
                    raise NewtonDivergence(
                        f"Step size underflow ({err})", sign=format_signs(sys.sign), lam=lam_new
                    ) from err
                continue
            if turn > self.max_turn and step > self.settings.min_log_step:
                h = step / 2.0
                continue
            points.append(q)
            p, tau, prev_curve = q, tau_new, curve
            if turn < 0.4 * self.max_turn:
                h = min(step * 1.5, self.settings.max_log_step)
            else:
                h = step
        return points


# ----------------------------- Public API ---------------------------------

def solve_at_lambda(
    instance: LPInstance,
    sign: SignVector,
    lam: float,
    start: PathPoint | np.ndarray,
    settings: Settings = DEFAULT_SETTINGS,
) -> PathPoint:
    """Central path point at λ from a start strictly inside the region."""
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    system = PathSystem(instance, sign, settings)
    x0 = start.x if isinstance(start, PathPoint) else np.asarray(start, dtype=float)
    x, y, s, res = system.correct(np.array(x0, dtype=float), lam)
    return system.point(x, y, s, lam, res)


def _relative_distance(x: np.ndarray, target: Sequence[float]) -> float:
    t = np.asarray(target, dtype=float)
    return float(np.max(np.abs(x - t)) / (1.0 + np.max(np.abs(t), initial=0.0)))


def classify_vertex(
    x: np.ndarray,
    candidates: dict[tuple[int, ...], tuple[Fraction, ...]],
    tol: float,
) -> Endpoint:
    if not candidates:
        return Endpoint(EndpointKind.UNCLASSIFIED)
    dist, basis = min((_relative_distance(x, [float(v) for v in pt]), b) for b, pt in candidates.items())
    if dist <= tol:
        return Endpoint(EndpointKind.VERTEX, format_basis(basis), dist, basis)
    logger.warning("endpoint %.3e away from the nearest vertex %s", dist, format_basis(basis))
    return Endpoint(EndpointKind.UNCLASSIFIED, format_basis(basis), dist)


def trace_region(
    instance: LPInstance,
    sign: SignVector,
    lambda_max: float | None = None,
    lambda_min: float | None = None,
    side: Side = Side.PRIMAL,
    cost_sign: int = 1,
    region: Region | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> CurveTrace:
    """
    Trace the central path of region `sign` (a sign vector of x on the
    primal side, of s on the dual side) for cost c (cost_sign=+1) or -c.
    Dual traces follow the dual instance and are reported in the original
    (x, y, s) coordinates.
    """
    traced = instance if side is Side.PRIMAL else instance.dual()
    sign = tuple(sign)
    if region is None:
        if not is_feasible(traced, sign):
            raise NewtonDivergence("Region is empty", sign=format_signs(sign))
        region = Region(sign, is_bounded(traced, sign))
    lambda_max = lambda_max if lambda_max is not None else settings.lambda_max
    lambda_min = lambda_min if lambda_min is not None else settings.lambda_min
    lam_hi = lambda_max if lambda_max is not None else settings.lambda_max_factor * traced.scale
    lam_lo = lambda_min if lambda_min is not None else settings.lambda_min_factor * traced.scale
    lam_hi, lam_lo = abs(lam_hi), abs(lam_lo)
    if lam_lo > lam_hi:
        raise ValueError(f"lambda_min {lam_lo:.3e} exceeds lambda_max {lam_hi:.3e}")
    cost_sign = 1 if cost_sign > 0 else -1

    curve_map = None
    if side is Side.DUAL:
        original = instance.arrays.A
        curve_map = np.linalg.solve(original @ original.T, original) if instance.d else np.zeros((0, instance.n))
    system = PathSystem(traced, sign, settings, curve_map)
    tracer = PathTracer(system, cost_sign)

    if region.bounded:
        if region.analytic_center is None:
            region = region_center(traced, region, settings)
        center = region.analytic_center
        first = tracer.start(cost_sign * lam_hi, center)
        points = tracer.run(first, cost_sign * lam_lo) if lam_lo < lam_hi else [first]
        dist = _relative_distance(first.x, center)
        start_end = (
            Endpoint(EndpointKind.ANALYTIC_CENTER, format_signs(sign), dist)
            if dist <= settings.endpoint_tol
            else Endpoint(EndpointKind.UNCLASSIFIED, format_signs(sign), dist)
        )
    else:
        lam0 = cost_sign * min(max(traced.scale, lam_lo), lam_hi)
        x0 = np.array([float(v) for v in interior_point(traced, sign, bounded=False)])
        first = tracer.start(lam0, x0)
        up = tracer.run(first, cost_sign * lam_hi, partial_ok=True)
        down = tracer.run(first, cost_sign * lam_lo)
        points = list(reversed(up[1:])) + down
        start_end = Endpoint(EndpointKind.UNCLASSIFIED)

    candidates = {b: v for b, v in vertices(traced).items() if all(s * x >= 0 for s, x in zip(sign, v))}
    end = classify_vertex(points[-1].x, candidates, settings.endpoint_tol)
    frame = system.frame
    if side is Side.DUAL:
        points = [_to_original(instance, p, curve_map) for p in points]
        frame = None
    logger.info(
        "%s %s region %s (%s): %d points, end %s",
        instance.name, side.value, format_signs(sign), "c" if cost_sign > 0 else "-c", len(points), end.label,
    )
    return CurveTrace(
        region_sign=sign,
        points=points,
        endpoint_start=start_end,
        endpoint_end=end,
        side=side,
        cost_sign=cost_sign,
        bounded=region.bounded,
        frame=frame,
        refine=partial(_retrace, instance, sign, lam_hi, lam_lo, side, cost_sign, region, settings),
    )


def _retrace(
    instance: LPInstance,
    sign: SignVector,
    lam_hi: float,
    lam_lo: float,
    side: Side,
    cost_sign: int,
    region: Region,
    settings: Settings,
    max_turn: float,
) -> CurveTrace:
    return trace_region(instance, sign, lam_hi, lam_lo, side, cost_sign, region, settings.override(max_turn=max_turn))


def _to_original(instance: LPInstance, p: PathPoint, y_map: np.ndarray) -> PathPoint:
    """Dual-instance point (x' = s, s' = x) back to the original coordinates."""
    n, d_dual = instance.n, instance.n - instance.d
    tx, ts = p.tangent[:n], p.tangent[n + d_dual:]
    ty = y_map @ tx
    c = instance.arrays.c
    y = y_map @ (p.x + c)
    t = np.concatenate([ts, ty, tx])
    norm = np.linalg.norm(t)
    return PathPoint(p.lam, p.s, y, p.x, t / norm if norm > 0 else t, p.residual)


def generator_residual(values: Mapping[str, float], generators: Iterable[SparsePolynomial]) -> float:
    """max |g(v)| / (‖g‖₁·max(1, ‖v‖∞)^deg g) over the generators, v looked up by variable name."""
    worst = 0.0
    for g in generators:
        if g.is_zero():
            continue
        used = [float(values[name]) for name in g.variables]
        size = max(1.0, max((abs(v) for v in used), default=0.0))
        value = abs(float(g.evaluate(used)))
        worst = max(worst, value / (float(g.norm1()) * size ** g.degree))
    return worst


def residual_on_generators(point: PathPoint, generators: Iterable[SparsePolynomial]) -> float:
    """generator_residual at a path point, with variables x1.., y1.., s1.."""
    values: dict[str, float] = {}
    for prefix, vec in (("x", point.x), ("y", point.y), ("s", point.s)):
        for i, v in enumerate(vec):
            values[f"{prefix}{i + 1}"] = float(v)
    return generator_residual(values, generators)


def level_crossings(traces: Iterable[CurveTrace], c: Sequence[float], c0: float) -> int:
    """Sign changes of cᵀx - c0 along the traces."""
    cv = np.asarray([float(v) for v in c])
    total = 0
    for trace in traces:
        values = np.array([p.x @ cv for p in trace.points]) - float(c0)
        signs = np.sign(values[values != 0])
        total += int(np.count_nonzero(signs[1:] != signs[:-1]))
    return total
