"""
Matroid invariants of an LP instance and the curve bounds derived from them.

Primal quantities come from M_{A,c} (matroid of the stacked matrix (A; c)),
dual ones from M_{B,g}. The Möbius numbers |μ(M_A)| and |μ(M_B)| count the
bounded regions of the primal and dual arrangements and are the
denominators of the average-curvature bounds.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from centralcurve.algebra.polynomial import SparsePolynomial
from centralcurve.analysis.common import InstanceAnalysis, pi_multiple
from centralcurve.analysis.matroid import (
    Matroid,
    broken_circuit_fvector,
    h_vector,
    matroid_from_matrix,
    tutte_polynomial,
    uniform_h_vector,
)
from centralcurve.core.errors import DegenerateCost
from centralcurve.core.instance import LPInstance
from centralcurve.exact.matrix import RationalMatrix

logger = logging.getLogger(__name__)


@dataclass
class InvariantReport:
    name: str
    n: int
    d: int
    f_vector: list[int]
    h_vector: list[int]
    tutte: SparsePolynomial
    mobius: int
    f_vector_dual: list[int]
    h_vector_dual: list[int]
    mobius_dual: int
    degree_primal: int
    degree_dual: int
    genus_primal: int
    genus_dual: int
    gauss_bound_primal: int
    gauss_bound_dual: int
    avg_curvature_bound_primal: Fraction | None  # multiple of π
    avg_curvature_bound_dual: Fraction | None
    generic_degree_primal: int
    generic_degree_dual: int
    generic_gauss_bound_primal: int
    generic_gauss_bound_dual: int
    generic_avg_bound_primal: int  # multiple of π
    generic_avg_bound_dual: int
    uniform_primal: bool
    uniform_dual: bool
    h_within_uniform_bounds: bool
    plucker_primal: bool | None
    plucker_dual: bool | None
    warnings: list[str] = field(default_factory=list)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.degree_primal, self.degree_dual

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "n": self.n,
            "d": self.d,
            "f_vector": self.f_vector,
            "h_vector": self.h_vector,
            "tutte": self.tutte.to_text(),
            "mobius": self.mobius,
            "f_vector_dual": self.f_vector_dual,
            "h_vector_dual": self.h_vector_dual,
            "mobius_dual": self.mobius_dual,
            "degree_primal": self.degree_primal,
            "degree_dual": self.degree_dual,
            "bidegree": list(self.bidegree),
            "genus_primal": self.genus_primal,
            "genus_dual": self.genus_dual,
            "gauss_bound_primal": self.gauss_bound_primal,
            "gauss_bound_dual": self.gauss_bound_dual,
            "avg_curvature_bound_primal": pi_multiple(self.avg_curvature_bound_primal),
            "avg_curvature_bound_dual": pi_multiple(self.avg_curvature_bound_dual),
            "generic": {
                "degree_primal": self.generic_degree_primal,
                "degree_dual": self.generic_degree_dual,
                "gauss_bound_primal": self.generic_gauss_bound_primal,
                "gauss_bound_dual": self.generic_gauss_bound_dual,
                "avg_curvature_bound_primal": pi_multiple(self.generic_avg_bound_primal),
                "avg_curvature_bound_dual": pi_multiple(self.generic_avg_bound_dual),
            },
            "uniform_primal": self.uniform_primal,
            "uniform_dual": self.uniform_dual,
            "h_within_uniform_bounds": self.h_within_uniform_bounds,
            "plucker_primal": self.plucker_primal,
            "plucker_dual": self.plucker_dual,
            "warnings": list(self.warnings),
        }


# --- formulas -------------------------------------------------------------------

def genus(h: list[int]) -> int:
    """1 - Σ_j (1 - j)·h_j."""
    return 1 - sum((1 - j) * hj for j, hj in enumerate(h))


def gauss_bound(h: list[int]) -> int:
    """2·Σ i·h_i."""
    return 2 * sum(i * hi for i, hi in enumerate(h))


def column_matroid(m: RationalMatrix, ground_size: int) -> Matroid:
    """Column matroid, or the rank-0 matroid when m has no nonzero row."""
    if m.rows == 0 or m.is_zero():
        return Matroid(ground_size, 0, frozenset({0}))
    return matroid_from_matrix(m)


def _within_uniform(h: list[int], r: int, n: int) -> bool:
    return all(hi <= comb(n - r + i - 1, i) for i, hi in enumerate(h))


# ----------------------------- Public API ---------------------------------

def invariant_report(instance: LPInstance) -> InvariantReport:
    n, d = instance.n, instance.d
    warnings: list[str] = []

    m_a = column_matroid(instance.A, n)
    m_b = column_matroid(instance.B, n)
    m_ac = column_matroid(instance.stacked_cost(), n)
    m_bg = column_matroid(instance.stacked_dual(), n)

    if m_ac.rank == m_a.rank:
        err = DegenerateCost(f"c lies in the row space of A for {instance.name!r}; M(A,c) has rank {m_ac.rank}")
        logger.warning("%s", err)
        warnings.append(f"degenerate-cost: {err}")
    if m_bg.rank == m_b.rank:
        msg = f"b = 0 for {instance.name!r}; the dual matroid M(B,g) does not gain rank"
        logger.warning("%s", msg)
        warnings.append(f"degenerate-dual: {msg}")

    h_ac = h_vector(m_ac)
    h_bg = h_vector(m_bg)
    mobius = sum(h_vector(m_a))
    mobius_dual = sum(h_vector(m_b))

    degree_primal = sum(h_ac)
    degree_dual = sum(h_bg)
    gauss_primal = gauss_bound(h_ac)
    gauss_dual = gauss_bound(h_bg)
    genus_primal = genus(h_ac)
    genus_dual = genus(h_bg)

    uniform_primal = m_ac.is_uniform()
    uniform_dual = m_bg.is_uniform()
    within = _within_uniform(h_ac, m_ac.rank, n) and _within_uniform(h_bg, m_bg.rank, n)
    if uniform_primal and h_ac != uniform_h_vector(m_ac.rank, n):
        warnings.append(f"h-vector {h_ac} differs from the uniform closed form")

    report = InvariantReport(
        name=instance.name,
        n=n,
        d=d,
        f_vector=broken_circuit_fvector(m_ac),
        h_vector=h_ac,
        tutte=tutte_polynomial(m_ac),
        mobius=mobius,
        f_vector_dual=broken_circuit_fvector(m_bg),
        h_vector_dual=h_bg,
        mobius_dual=mobius_dual,
        degree_primal=degree_primal,
        degree_dual=degree_dual,
        genus_primal=genus_primal,
        genus_dual=genus_dual,
        gauss_bound_primal=gauss_primal,
        gauss_bound_dual=gauss_dual,
        avg_curvature_bound_primal=Fraction(gauss_primal, mobius) if mobius else None,
        avg_curvature_bound_dual=Fraction(gauss_dual, mobius_dual) if mobius_dual else None,
        generic_degree_primal=comb(n - 1, d),
        generic_degree_dual=comb(n - 1, d - 1),
        generic_gauss_bound_primal=2 * (n - d - 1) * comb(n - 1, d - 1),
        generic_gauss_bound_dual=2 * (d - 1) * comb(n - 1, d),
        generic_avg_bound_primal=2 * (n - d - 1),
        generic_avg_bound_dual=2 * (d - 1),
        uniform_primal=uniform_primal,
        uniform_dual=uniform_dual,
        h_within_uniform_bounds=within,
        plucker_primal=gauss_primal == 2 * degree_primal + 2 * genus_primal - 2 if uniform_primal else None,
        plucker_dual=gauss_dual == 2 * degree_dual + 2 * genus_dual - 2 if uniform_dual else None,
        warnings=warnings,
    )
    logger.info(
        "%s: degree %d/%d, gauss bound %d/%d, |mu(A)|=%d, |mu(B)|=%d",
        instance.name, degree_primal, degree_dual, gauss_primal, gauss_dual, mobius, mobius_dual,
    )
    return report


class InvariantAnalysis(InstanceAnalysis):
    def __init__(self, instance: LPInstance) -> None:
        self.instance = instance

    def analyze(self) -> dict[str, Any]:
        return invariant_report(self.instance).to_json()
