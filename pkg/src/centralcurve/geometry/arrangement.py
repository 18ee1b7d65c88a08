"""
The arrangement of coordinate hyperplanes {x_i = 0} inside {A·x = b}.

Regions are indexed by sign vectors σ ∈ {+1, -1}^n. Feasibility and
boundedness of a region are decided exactly with the rational simplex;
only the analytic centers are computed in floating point.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product

import numpy as np

from centralcurve.analysis.matroid import circuits, cocircuits, matroid_from_matrix
from centralcurve.core.config import DEFAULT_SETTINGS, Settings
from centralcurve.core.errors import DegenerateCost, LimitExceeded, NewtonDivergence
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import SignVector, format_signs
from centralcurve.exact.lp import LPStatus, maximize
from centralcurve.exact.matrix import RationalMatrix, kernel_basis, primitive_integer_vector, solve
from centralcurve.geometry.barrier import analytic_center

logger = logging.getLogger(__name__)

Basis = tuple[int, ...]


@dataclass(frozen=True)
class Region:
    sign_vector: SignVector
    bounded: bool
    analytic_center: np.ndarray | None = field(default=None, compare=False)
    vertex_set: tuple[Basis, ...] = ()
    kkt_residual: float | None = field(default=None, compare=False)

    @property
    def label(self) -> str:
        return format_signs(self.sign_vector)


@dataclass(frozen=True)
class VertexPair:
    basis: Basis
    x: tuple[Fraction, ...]
    s: tuple[Fraction, ...]
    y: tuple[Fraction, ...]


@dataclass(frozen=True)
class DisjointSupportWitness:
    circuit: Basis  # support of the kernel vector
    cocircuit: Basis  # support of the row-space vector
    kernel_vector: tuple[int, ...]
    rowspace_vector: tuple[int, ...]


# --- exact region tests -------------------------------------------------------------

def _scaled_columns(instance: LPInstance, sign: SignVector) -> list[list[Fraction]]:
    """Rows of A·diag(σ)."""
    return [[instance.A[i, j] * sign[j] for j in range(instance.n)] for i in range(instance.d)]


def _interior_lp(instance: LPInstance, sign: SignVector, cap: Fraction | None):
    """
    maximize t  s.t.  A·diag(σ)·(w + t·1) = b,  w, t ≥ 0  (and t ≤ cap).
    The region is nonempty iff the optimum is positive.
    """
    n = instance.n
    ad = _scaled_columns(instance, sign)
    rows = [r + [sum(r, Fraction(0))] for r in ad]
    rhs = list(instance.b)
    cost = [Fraction(0)] * n + [Fraction(1)]
    if cap is not None:
        rows = [r + [Fraction(0)] for r in rows]
        rows.append([Fraction(0)] * n + [Fraction(1), Fraction(1)])
        rhs.append(cap)
        cost.append(Fraction(0))
    return maximize(cost, rows, rhs)


def is_feasible(instance: LPInstance, sign: SignVector) -> bool:
    result = _interior_lp(instance, sign, cap=Fraction(1))
    return result.status is LPStatus.OPTIMAL and result.value > 0


def is_bounded(instance: LPInstance, sign: SignVector) -> bool:
    """The recession cone {A·x = 0, σ_i·x_i ≥ 0} is {0}."""
    n = instance.n
    ad = _scaled_columns(instance, sign)
    rows = [r + [Fraction(0)] for r in ad]
    rows.append([Fraction(1)] * n + [Fraction(1)])
    rhs = [Fraction(0)] * instance.d + [Fraction(1)]
    result = maximize([Fraction(1)] * n + [Fraction(0)], rows, rhs)
    return result.status is LPStatus.OPTIMAL and result.value == 0


def interior_point(instance: LPInstance, sign: SignVector, bounded: bool = True) -> tuple[Fraction, ...]:
    """Exact point maximising min_i σ_i·x_i (capped at 1 on unbounded regions)."""
    result = _interior_lp(instance, sign, cap=None if bounded else Fraction(1))
    if result.status is not LPStatus.OPTIMAL or result.value <= 0:
        raise NewtonDivergence("Region has no interior point", sign=format_signs(sign))
    n = instance.n
    t = result.z[n]
    return tuple(sign[j] * (result.z[j] + t) for j in range(n))


# ----------------------------- Public API ---------------------------------

def vertices(instance: LPInstance) -> dict[Basis, tuple[Fraction, ...]]:
    """One exact point per basis S of M(A): A_S·x_S = b, zero off S."""
    out: dict[Basis, tuple[Fraction, ...]] = {}
    m = matroid_from_matrix(instance.A)
    for basis in m.basis_list():
        xs = solve(instance.A.select_columns(basis), instance.b)
        x = [Fraction(0)] * instance.n
        for j, v in zip(basis, xs):
            x[j] = v
        out[basis] = tuple(x)
    return out


def vertex_pairs(instance: LPInstance) -> list[VertexPair]:
    """Primal vertex on S paired with the dual vertex supported on the complement of S."""
    pairs = []
    if instance.B.rows == 0:
        for basis, x in vertices(instance).items():
            s = tuple(Fraction(0) for _ in range(instance.n))
            pairs.append(VertexPair(basis, x, s, instance.y_from_s(s)))
        return pairs
    dual_vertices = vertices(instance.dual())
    for basis, x in vertices(instance).items():
        complement = tuple(j for j in range(instance.n) if j not in basis)
        s = dual_vertices[complement]
        pairs.append(VertexPair(basis, x, s, instance.y_from_s(s)))
    return pairs


def _closure_vertices(sign: SignVector, points: dict[Basis, tuple[Fraction, ...]]) -> tuple[Basis, ...]:
    return tuple(b for b, x in points.items() if all(s * v >= 0 for s, v in zip(sign, x)))


def _candidate_signs(points: dict[Basis, tuple[Fraction, ...]]) -> set[SignVector]:
    """Sign vectors of the orthants touching some vertex."""
    out: set[SignVector] = set()
    for x in points.values():
        zeros = [j for j, v in enumerate(x) if v == 0]
        base = [1 if v > 0 else -1 for v in x]
        for choice in product((1, -1), repeat=len(zeros)):
            sign = list(base)
            for j, s in zip(zeros, choice):
                sign[j] = s
            out.add(tuple(sign))
    return out


def enumerate_regions(
    instance: LPInstance,
    settings: Settings = DEFAULT_SETTINGS,
    exhaustive: bool = False,
) -> list[Region]:
    n = instance.n
    if n > settings.region_limit:
        raise LimitExceeded(f"{instance.name!r} has n = {n} > region limit {settings.region_limit}")
    points = vertices(instance)
    if exhaustive or not points:
        if n > settings.exhaustive_scan_limit:
            raise LimitExceeded(f"Exhaustive sign scan needs n <= {settings.exhaustive_scan_limit}, got {n}")
        candidates = set(product((1, -1), repeat=n))
    else:
        candidates = _candidate_signs(points)

    regions = []
    for sign in sorted(candidates, key=format_signs):
        if not is_feasible(instance, sign):
            continue
        regions.append(Region(sign, is_bounded(instance, sign), vertex_set=_closure_vertices(sign, points)))
    logger.info(
        "%s: %d regions (%d bounded) from %d candidate sign vectors",
        instance.name, len(regions), sum(r.bounded for r in regions), len(candidates),
    )
    return regions


def bounded_regions(instance: LPInstance, settings: Settings = DEFAULT_SETTINGS) -> list[Region]:
    return [r for r in enumerate_regions(instance, settings) if r.bounded]


def region_center(instance: LPInstance, region: Region, settings: Settings = DEFAULT_SETTINGS) -> Region:
    start = np.array([float(v) for v in interior_point(instance, region.sign_vector)])
    result = analytic_center(instance.arrays.A, region.sign_vector, start, settings)
    return replace(region, analytic_center=result.x, kkt_residual=result.kkt_residual)


def analytic_centers(
    instance: LPInstance,
    regions: list[Region] | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> list[tuple[Region, np.ndarray]]:
    """(region with its center filled in, center) for every bounded region."""
    if regions is None:
        regions = enumerate_regions(instance, settings)
    out = []
    for region in regions:
        if not region.bounded:
            continue
        filled = region_center(instance, region, settings)
        out.append((filled, filled.analytic_center))
    return out


def level_slice(instance: LPInstance, c0: Fraction | int | str) -> LPInstance:
    """The instance cut by the level set {cᵀx = c0}."""
    stacked = instance.stacked_cost()
    if stacked.rank() == instance.d:
        raise DegenerateCost(f"Cost of {instance.name!r} is constant on the affine space")
    return LPInstance.from_data(
        stacked,
        list(instance.b) + [c0],
        instance.c,
        name=f"{instance.name}-slice",
    )


def disjoint_support_exists(instance: LPInstance) -> DisjointSupportWitness | None:
    """First (circuit, cocircuit) of M(A) with disjoint supports, in lexicographic order."""
    m = matroid_from_matrix(instance.A)
    cocs = cocircuits(m)
    for circuit in circuits(m):
        for coc in cocs:
            if set(circuit) & set(coc):
                continue
            return DisjointSupportWitness(
                circuit=circuit,
                cocircuit=coc,
                kernel_vector=_kernel_vector(instance.A, circuit),
                rowspace_vector=_rowspace_vector(instance.A, coc),
            )
    return None


def _kernel_vector(A: RationalMatrix, support: Basis) -> tuple[int, ...]:
    local = kernel_basis(A.select_columns(support)).row(0)
    full = [Fraction(0)] * A.cols
    for j, v in zip(support, local):
        full[j] = v
    return primitive_integer_vector(full)


def _rowspace_vector(A: RationalMatrix, support: Basis) -> tuple[int, ...]:
    """u = yᵀA vanishing off `support`: y spans the left kernel of the other columns."""
    others = [j for j in range(A.cols) if j not in support]
    if others:
        y = kernel_basis(A.select_columns(others).transpose()).row(0)
    else:
        y = (Fraction(1),) + (Fraction(0),) * (A.rows - 1)
    return primitive_integer_vector(A.transpose().apply(y))
