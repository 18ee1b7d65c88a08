import logging
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import NotPlanar
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side
from centralcurve.geometry.arrangement import Region, vertex_pairs
from centralcurve.geometry.barrier import kernel_frame
from centralcurve.pathtrace.tracer import CurveTrace

logger = logging.getLogger(__name__)


def resample(points: np.ndarray, count: int) -> np.ndarray:
    """`count` points equally spaced in arc length along a polyline."""
    if len(points) < 2:
        return points
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    if arc[-1] == 0.0:
        return points[:1]
    target = np.linspace(0.0, arc[-1], count)
    return np.column_stack([np.interp(target, arc, points[:, k]) for k in range(points.shape[1])])


class CurvePlot:
    """
    Planar picture of one side of an instance: the lines of the
    arrangement, its vertices (dots), analytic centers (crosses) and the
    traced central paths.

    Primal coordinates are u with x = x0 + N·u (N an orthonormal kernel
    frame, x0 the minimum-norm solution of A·x = b); dual coordinates are y.
    """

    bg = "white"
    grid = "#dddddd"
    line_color = "#9e9e9e"
    path_color = "#1f77b4"
    opposite_color = "#ff7f0e"
    vertex_color = "#d62728"
    center_color = "black"
    viewport_factor = 1.2

    def __init__(self, instance: LPInstance, side: Side = Side.PRIMAL, settings: Settings = DEFAULT_SETTINGS) -> None:
        self.instance = instance
        self.side = side
        self.settings = settings
        data = instance.arrays
        match side:
            case Side.PRIMAL:
                if instance.n - instance.d != 2:
                    raise NotPlanar(f"{instance.name!r}: primal curve lives in dimension {instance.n - instance.d}, not 2")
                self.frame = kernel_frame(data.A)
                self.origin = np.array([float(v) for v in instance.g])
                # x_i = 0  <=>  N_i · u = -x0_i
                self.normals = self.frame
                self.offsets = -self.origin
            case Side.DUAL:
                if instance.d != 2:
                    raise NotPlanar(f"{instance.name!r}: dual curve lives in dimension {instance.d}, not 2")
                self.frame = None
                self.origin = None
                # s_i = 0  <=>  a_i · y = c_i
                self.normals = data.A.T
                self.offsets = data.c
            case _:
                raise NotPlanar("The primal-dual curve has no planar picture")

        self.fig = Figure(figsize=(6, 6), dpi=100)
        self.ax = self.fig.add_subplot(111)
        self._apply_style()

    def _apply_style(self) -> None:
        self.fig.patch.set_facecolor(self.bg)
        self.ax.set_facecolor(self.bg)
        self.ax.grid(True, color=self.grid, linewidth=0.6)
        labels = ("u1", "u2") if self.side is Side.PRIMAL else ("y1", "y2")
        self.ax.set_xlabel(labels[0])
        self.ax.set_ylabel(labels[1])
        self.ax.set_aspect("equal", adjustable="box")

    # --- coordinates ---------------------------------------------------------------

    def planar(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.side is Side.DUAL:
            return np.asarray(y, dtype=float)
        return self.frame.T @ (np.asarray(x, dtype=float) - self.origin)

    def vertex_points(self) -> np.ndarray:
        pts = []
        for pair in vertex_pairs(self.instance):
            x = np.array([float(v) for v in pair.x])
            y = np.array([float(v) for v in pair.y])
            pts.append(self.planar(x, y))
        return np.array(pts).reshape(-1, 2)

    def center_points(self, regions: Iterable[Region]) -> np.ndarray:
        pts = []
        for region in regions:
            if region.analytic_center is None:
                continue
            if self.side is Side.DUAL:
                # centers of the dual instance are slacks s
                A = self.instance.arrays.A
                y = np.linalg.solve(A @ A.T, A @ (region.analytic_center + self.instance.arrays.c))
                pts.append(y)
            else:
                pts.append(self.planar(region.analytic_center, np.zeros(0)))
        return np.array(pts).reshape(-1, 2)

    def viewport(self, vertices: np.ndarray, traces: Sequence[np.ndarray]) -> tuple[float, float, float, float]:
        pts = vertices if len(vertices) else np.vstack(traces) if traces else np.zeros((1, 2))
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        mid = (lo + hi) / 2.0
        half = np.maximum((hi - lo) / 2.0 * self.viewport_factor, 0.5)
        return mid[0] - half[0], mid[0] + half[0], mid[1] - half[1], mid[1] + half[1]

    # --- drawing -------------------------------------------------------------------------

    def draw(self, traces: Sequence[CurveTrace], regions: Iterable[Region] = ()) -> None:
        for a, beta in zip(self.normals, self.offsets):
            norm2 = float(a @ a)
            if norm2 == 0.0:
                continue
            p = beta * a / norm2
            self.ax.axline(tuple(p), tuple(p + np.array([-a[1], a[0]])), color=self.line_color, linewidth=0.8)

        curves = []
        for trace in traces:
            pts = np.array([self.planar(p.x, p.y) for p in trace.points])
            curve = resample(pts, self.settings.plot_points)
            curves.append(curve)
            color = self.path_color if trace.cost_sign > 0 else self.opposite_color
            self.ax.plot(curve[:, 0], curve[:, 1], color=color, linewidth=1.2)

        verts = self.vertex_points()
        if len(verts):
            self.ax.plot(verts[:, 0], verts[:, 1], "o", color=self.vertex_color, markersize=4, linestyle="none")
        centers = self.center_points(regions)
        if len(centers):
            self.ax.plot(centers[:, 0], centers[:, 1], "x", color=self.center_color, markersize=6, linestyle="none")

        x0, x1, y0, y1 = self.viewport(verts, curves)
        self.ax.set_xlim(x0, x1)
        self.ax.set_ylim(y0, y1)
        self.ax.set_title(f"{self.instance.name} ({self.side.value})")
        logger.info(
            "%s: plotted %d traces, %d vertices, %d centers", self.instance.name, len(curves), len(verts), len(centers)
        )

    def save(self, path: str | Path) -> None:
        """SVG with fixed ids and no timestamp, so reruns are byte-identical."""
        with matplotlib.rc_context({"svg.hashsalt": "centralcurve", "svg.fonttype": "none"}):
            self.fig.savefig(path, format="svg", metadata={"Date": None}, facecolor=self.fig.get_facecolor())
