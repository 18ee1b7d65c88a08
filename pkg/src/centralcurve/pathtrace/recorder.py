import csv
from typing import TextIO

from centralcurve.analysis.curvature import curve_tangents
from centralcurve.pathtrace.tracer import CurveTrace, turn_angle


def trace_header(n: int, d: int) -> list[str]:
    return (
        ["lambda"]
        + [f"x_{i + 1}" for i in range(n)]
        + [f"y_{i + 1}" for i in range(d)]
        + [f"s_{i + 1}" for i in range(n)]
        + ["residual", "turn_angle"]
    )


class TraceCsvRecorder:
    """One CSV row per accepted path point."""

    def __init__(self, stream: TextIO, n: int, d: int) -> None:
        self._f = stream
        self._w = csv.DictWriter(self._f, fieldnames=trace_header(n, d), lineterminator="\n")
        self._w.writeheader()

    @classmethod
    def open(cls, path: str, n: int, d: int) -> "TraceCsvRecorder":
        return cls(open(path, "w", newline=""), n, d)

    def append(self, trace: CurveTrace) -> None:
        tangents = curve_tangents(trace)
        for k, p in enumerate(trace.points):
            row = {"lambda": f"{p.lam:.16e}"}
            for prefix, vec in (("x", p.x), ("y", p.y), ("s", p.s)):
                for i, v in enumerate(vec):
                    row[f"{prefix}_{i + 1}"] = f"{v:.17g}"
            row["residual"] = f"{p.residual:.6e}"
            row["turn_angle"] = f"{turn_angle(tangents[k - 1], tangents[k]) if k else 0.0:.6e}"
            self._w.writerow(row)

    def close(self) -> None:
        if not self._f.closed:
            self._f.close()
