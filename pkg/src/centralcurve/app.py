import argparse
import json
import logging
import sys
from contextlib import contextmanager
from typing import Any, Iterator, Sequence, TextIO

import numpy as np
import pandas as pd

from centralcurve.analysis.curvature import curvature_report
from centralcurve.analysis.invariants import invariant_report
from centralcurve.analysis.verify import Verification, verification_table
from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import (
    AmbientNot2D,
    CentralCurveError,
    InstanceParseError,
    LimitExceeded,
    NotPlanar,
    RankDeficient,
    UnknownExample,
)
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side, format_signs, parse_signs
from centralcurve.io.base import InstanceSource
from centralcurve.io.examples import EXAMPLE_NAMES, ExampleSource, example
from centralcurve.io.file_source import FileSource
from centralcurve.pathtrace.controller import TraceController
from centralcurve.pathtrace.recorder import TraceCsvRecorder
from centralcurve.pathtrace.tracer import trace_region
from centralcurve.viz.curve_plot import CurvePlot

logger = logging.getLogger("centralcurve")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_UNSUPPORTED = 3


# --- argument parsing ------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--instance", metavar="PATH", help="instance JSON file")
    source.add_argument("--example", metavar="NAME", help=f"built-in instance ({', '.join(EXAMPLE_NAMES)})")
    common.add_argument("--variant", help="named variant of the instance (e.g. c-prime)")
    common.add_argument("--out", metavar="PATH", help="output file (stdout when omitted)")
    common.add_argument("--side", choices=[Side.PRIMAL.value, Side.DUAL.value], default=Side.PRIMAL.value)
    common.add_argument("--lambda-max", type=float, help="largest |lambda| traced")
    common.add_argument("--lambda-min", type=float, help="smallest |lambda| traced")
    common.add_argument("--tol", type=float, help="endpoint classification tolerance")
    common.add_argument("--max-turn", type=float, help="largest tangent turn per accepted step, radians")
    common.add_argument("--limit-n", type=int, help="largest n for region enumeration")
    common.add_argument("--workers", type=int, help="threads for per-region tracing")
    _add_verbosity(common)
    return common


def _add_verbosity(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centralcurve",
        description="Invariants, equations and traced central paths of linear programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    sub.add_parser("invariants", parents=[common], help="matroid invariants and curve bounds as JSON")

    trace = sub.add_parser("trace", parents=[common], help="trace central paths to CSV")
    trace.add_argument("--region", metavar="SIGNS", help="sign vector like ++-+ (all bounded regions when omitted)")
    trace.add_argument("--cost-sign", type=int, choices=[1, -1], default=1, help="trace for c (1) or -c (-1)")

    curvature = sub.add_parser("curvature", parents=[common], help="total curvature per bounded region as JSON")
    curvature.add_argument("--no-refine", action="store_true", help="skip the refinement levels")

    sub.add_parser("centers", parents=[common], help="analytic centers of the bounded regions as CSV")
    sub.add_parser("plot", parents=[common], help="SVG picture of a planar central curve")

    ex = sub.add_parser("example", help="write a built-in instance file")
    ex.add_argument("--name", help="example name")
    ex.add_argument("--list", action="store_true", help="print the known names")
    ex.add_argument("--out", metavar="PATH")
    _add_verbosity(ex)

    verify = sub.add_parser("verify", parents=[common], help="cross-check exact predictions against traces")
    verify.add_argument("--no-refine", action="store_true", help="skip the curvature refinement levels")
    verify.add_argument("--json", action="store_true", help="print the checks as JSON instead of a table")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def settings_from_args(args: argparse.Namespace) -> Settings:
    if args.lambda_max is not None and args.lambda_min is not None and abs(args.lambda_min) > abs(args.lambda_max):
        raise InstanceParseError(f"--lambda-min {args.lambda_min} exceeds --lambda-max {args.lambda_max}")
    return DEFAULT_SETTINGS.override(
        lambda_max=args.lambda_max,
        lambda_min=args.lambda_min,
        endpoint_tol=args.tol,
        max_turn=args.max_turn,
        region_limit=args.limit_n,
        workers=args.workers,
    )


def load_instance(args: argparse.Namespace) -> LPInstance:
    source: InstanceSource = FileSource(args.instance) if args.instance else ExampleSource(args.example)
    document = source.load()
    return document.to_instance(args.variant)


@contextmanager
def _output(path: str | None, newline: str | None = None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline=newline) as f:
        yield f


def _write_json(doc: dict[str, Any], path: str | None) -> None:
    with _output(path) as f:
        f.write(json.dumps(doc, indent=2) + "\n")


# --- commands ----------------------------------------------------------------------------

def cmd_invariants(args: argparse.Namespace) -> int:
    report = invariant_report(load_instance(args))
    for warning in report.warnings:
        logger.warning("%s", warning)
    _write_json(report.to_json(), args.out)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    instance = load_instance(args)
    settings = settings_from_args(args)
    side = Side(args.side)
    if args.region:
        try:
            sign = parse_signs(args.region)
        except ValueError as err:
            raise InstanceParseError(f"--region: {err}") from None
        if len(sign) != instance.n:
            raise InstanceParseError(f"--region has {len(sign)} signs, the instance has n = {instance.n}")
        traces = [
            trace_region(instance, sign, side=side, cost_sign=args.cost_sign, settings=settings)
        ]
    else:
        controller = TraceController(instance, side, settings)
        traces = controller.run()
        for failure in controller.failures:
            logger.warning("region %s not traced: %s", failure.label, failure.message)

    with _output(args.out, newline="") as f:
        recorder = TraceCsvRecorder(f, instance.n, instance.d)
        for trace in traces:
            recorder.append(trace)
            logger.info(
                "%s: %s -> %s, %d points",
                trace.label, trace.endpoint_start.label, trace.endpoint_end.label, len(trace.points),
            )
    return EXIT_OK


def cmd_curvature(args: argparse.Namespace) -> int:
    instance = load_instance(args)
    report = curvature_report(
        instance, Side(args.side), settings=settings_from_args(args), refine=not args.no_refine
    )
    _write_json(report.to_json(), args.out)
    return EXIT_OK


def centers_frame(instance: LPInstance, side: Side, settings: Settings) -> pd.DataFrame:
    """One row per bounded region: sign vector, boundedness, the center in x (s and y on the dual side), KKT residual."""
    controller = TraceController(instance, side, settings)
    regions = [r for r in controller.prepare() if r.bounded]
    for failure in controller.failures:
        logger.warning("region %s: %s", failure.label, failure.message)
    rows = []
    data = instance.arrays
    for region in regions:
        row: dict[str, Any] = {"sign_vector": format_signs(region.sign_vector), "bounded": region.bounded}
        center = region.analytic_center
        if side is Side.DUAL:
            y = np.linalg.solve(data.A @ data.A.T, data.A @ (center + data.c))
            row.update({f"s_{i + 1}": v for i, v in enumerate(center)})
            row.update({f"y_{i + 1}": v for i, v in enumerate(y)})
        else:
            row.update({f"x_{i + 1}": v for i, v in enumerate(center)})
        row["kkt_residual"] = region.kkt_residual
        rows.append(row)
    return pd.DataFrame(rows)


def cmd_centers(args: argparse.Namespace) -> int:
    instance = load_instance(args)
    frame = centers_frame(instance, Side(args.side), settings_from_args(args))
    with _output(args.out, newline="") as f:
        frame.to_csv(f, index=False, float_format="%.17g", lineterminator="\n")
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    instance = load_instance(args)
    side = Side(args.side)
    settings = settings_from_args(args)
    plot = CurvePlot(instance, side, settings)
    controller = TraceController(instance, side, settings)
    traces = controller.run()
    plot.draw(traces, controller.regions)
    out = args.out or f"{instance.name}-{side.value}.svg"
    plot.save(out)
    logger.info("wrote %s", out)
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    if args.list or not args.name:
        print("\n".join(EXAMPLE_NAMES))
        return EXIT_OK
    document = example(args.name)
    with _output(args.out) as f:
        f.write(document.dumps())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = load_instance(args)
    verification = Verification(instance, settings_from_args(args), refine=not args.no_refine)
    summary = verification.analyze()
    if args.json:
        _write_json(summary, args.out)
    else:
        table = verification_table(verification.results)
        with _output(args.out) as f:
            f.write(f"{instance.name}\n")
            for warning in summary["warnings"]:
                f.write(f"warning: {warning}\n")
            f.write(table.to_string(index=False) + "\n")
            f.write(("PASS" if summary["ok"] else "FAIL") + "\n")
    return EXIT_OK if summary["ok"] else EXIT_VERIFY_FAILED


COMMANDS = {
    "invariants": cmd_invariants,
    "trace": cmd_trace,
    "curvature": cmd_curvature,
    "centers": cmd_centers,
    "plot": cmd_plot,
    "example": cmd_example,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return COMMANDS[args.command](args)
    except InstanceParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (NotPlanar, AmbientNot2D, UnknownExample, LimitExceeded, RankDeficient) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (CentralCurveError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
