import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import CentralCurveError
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side, format_signs
from centralcurve.geometry.arrangement import Region, enumerate_regions, region_center
from centralcurve.pathtrace.tracer import CurveTrace, trace_region

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceFailure:
    region_sign: tuple[int, ...]
    cost_sign: int
    message: str

    @property
    def label(self) -> str:
        return f"{format_signs(self.region_sign)}{'' if self.cost_sign > 0 else ' (-c)'}"


class TraceController:
    """
    Traces every region of one side of an instance on a thread pool.
    Each region is traced for c and for -c; failures are collected in
    `failures` instead of being raised.
    """

    def __init__(
        self,
        instance: LPInstance,
        side: Side = Side.PRIMAL,
        settings: Settings = DEFAULT_SETTINGS,
        include_unbounded: bool = False,
        lambda_max: float | None = None,
        lambda_min: float | None = None,
    ) -> None:
        self.instance = instance
        self.side = side
        self.settings = settings
        self.include_unbounded = include_unbounded
        self.lambda_max = lambda_max if lambda_max is not None else settings.lambda_max
        self.lambda_min = lambda_min if lambda_min is not None else settings.lambda_min
        self.traced = instance if side is Side.PRIMAL else instance.dual()
        self.arrangement: list[Region] = []  # every region of the traced side
        self.regions: list[Region] = []  # the ones being traced
        self.failures: list[TraceFailure] = []

    def prepare(self) -> list[Region]:
        regions = []
        self.arrangement = enumerate_regions(self.traced, self.settings)
        for region in self.arrangement:
            if region.bounded:
                try:
                    region = region_center(self.traced, region, self.settings)
                except CentralCurveError as err:
                    logger.warning("region %s: no analytic center: %s", region.label, err)
                    self.failures.append(TraceFailure(region.sign_vector, 1, str(err)))
                    continue
            elif not self.include_unbounded:
                continue
            regions.append(region)
        return regions

    def _trace(self, region: Region, cost_sign: int) -> CurveTrace | None:
        try:
            return trace_region(
                self.instance,
                region.sign_vector,
                self.lambda_max,
                self.lambda_min,
                side=self.side,
                cost_sign=cost_sign,
                region=region,
                settings=self.settings,
            )
        except CentralCurveError as err:
            logger.warning("region %s (cost sign %+d) failed: %s", region.label, cost_sign, err)
            self.failures.append(TraceFailure(region.sign_vector, cost_sign, str(err)))
            return None

    def run(self) -> list[CurveTrace]:
        self.failures = []
        self.regions = self.prepare()
        jobs = [(r, sign) for r in self.regions for sign in (1, -1)]
        with ThreadPoolExecutor(max_workers=max(1, self.settings.workers)) as pool:
            results = list(pool.map(lambda job: self._trace(*job), jobs))
        traces = [t for t in results if t is not None]
        self.failures.sort(key=lambda f: (format_signs(f.region_sign), -f.cost_sign))
        logger.info(
            "%s %s: %d traces over %d regions, %d failures",
            self.instance.name, self.side.value, len(traces), len(self.regions), len(self.failures),
        )
        return traces


# ----------------------------- Public API ---------------------------------

def trace_all_regions(
    instance: LPInstance,
    side: Side = Side.PRIMAL,
    settings: Settings = DEFAULT_SETTINGS,
    include_unbounded: bool = False,
) -> list[CurveTrace]:
    """Traces for c and -c over every bounded region (and unbounded ones on request)."""
    return TraceController(instance, side, settings, include_unbounded).run()
