"""
Exact two-phase simplex over Fractions with Bland's rule.

Problems are in standard form: maximize cᵀz subject to A z = b, z ≥ 0.
Used for region feasibility, boundedness (recession cones) and the
Chebyshev-like interior start points of the barrier Newton.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from centralcurve.core.errors import MismatchedShape

logger = logging.getLogger(__name__)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: LPStatus
    z: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    pivots: int = 0


def maximize(
    c: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
) -> LPResult:
    n = len(c)
    m = len(a_eq)
    if len(b_eq) != m or any(len(r) != n for r in a_eq):
        raise MismatchedShape(f"LP with {n} variables needs {m} rows of length {n} and {m} right-hand sides")

    # rows with b >= 0, then one artificial per row
    rows: list[list[Fraction]] = []
    for i, (r, bi) in enumerate(zip(a_eq, b_eq)):
        r = [Fraction(v) for v in r]
        bi = Fraction(bi)
        if bi < 0:
            r = [-v for v in r]
            bi = -bi
        artificial = [Fraction(int(k == i)) for k in range(m)]
        rows.append(r + artificial + [bi])
    basis = [n + i for i in range(m)]
    tableau = _Tableau(rows, basis, n_cols=n + m)

    # phase 1: maximize -sum(artificials)
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    if tableau.run(phase1) is LPStatus.UNBOUNDED:  # cannot happen, objective is bounded by 0
        raise RuntimeError("Phase 1 of the simplex reported an unbounded objective")
    if tableau.objective_value(phase1) < 0:
        logger.debug("LP infeasible after %d pivots", tableau.pivots)
        return LPResult(LPStatus.INFEASIBLE, pivots=tableau.pivots)

    tableau.drive_out_artificials(first_artificial=n)
    tableau.drop_columns(from_col=n)

    status = tableau.run([Fraction(v) for v in c])
    if status is LPStatus.UNBOUNDED:
        return LPResult(LPStatus.UNBOUNDED, pivots=tableau.pivots)
    z = tableau.solution(n)
    value = sum((Fraction(ci) * zi for ci, zi in zip(c, z)), Fraction(0))
    logger.debug("LP optimal value %s after %d pivots", value, tableau.pivots)
    return LPResult(LPStatus.OPTIMAL, z=z, value=value, pivots=tableau.pivots)


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], n_cols: int) -> None:
        self.rows = rows  # each row: n_cols coefficients followed by the rhs
        self.basis = basis
        self.n_cols = n_cols
        self.pivots = 0

    def objective_value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * r[-1] for b, r in zip(self.basis, self.rows)), Fraction(0))

    def _reduced_cost(self, cost: Sequence[Fraction], j: int) -> Fraction:
        return cost[j] - sum((cost[b] * r[j] for b, r in zip(self.basis, self.rows)), Fraction(0))

    def run(self, cost: Sequence[Fraction]) -> LPStatus:
        while True:
            entering = next((j for j in range(self.n_cols) if self._reduced_cost(cost, j) > 0), None)
            if entering is None:
                return LPStatus.OPTIMAL
            leaving = None
            best: tuple[Fraction, int] | None = None
            for i, r in enumerate(self.rows):
                if r[entering] > 0:
                    key = (r[-1] / r[entering], self.basis[i])
                    if best is None or key < best:
                        best, leaving = key, i
            if leaving is None:
                return LPStatus.UNBOUNDED
            self.pivot(leaving, entering)

    def pivot(self, i: int, j: int) -> None:
        lead = self.rows[i][j]
        self.rows[i] = [v / lead for v in self.rows[i]]
        for k, r in enumerate(self.rows):
            if k != i and r[j] != 0:
                f = r[j]
                self.rows[k] = [x - f * y for x, y in zip(r, self.rows[i])]
        self.basis[i] = j
        self.pivots += 1

    def drive_out_artificials(self, first_artificial: int) -> None:
        keep = []
        for i in range(len(self.rows)):
            if self.basis[i] >= first_artificial:
                j = next((j for j in range(first_artificial) if self.rows[i][j] != 0), None)
                if j is None:
                    continue  # redundant equality
                self.pivot(i, j)
            keep.append(i)
        self.rows = [self.rows[i] for i in keep]
        self.basis = [self.basis[i] for i in keep]

    def drop_columns(self, from_col: int) -> None:
        self.rows = [r[:from_col] + [r[-1]] for r in self.rows]
        self.n_cols = from_col

    def solution(self, n: int) -> tuple[Fraction, ...]:
        z = [Fraction(0)] * n
        for b, r in zip(self.basis, self.rows):
            if b < n:
                z[b] = r[-1]
        return tuple(z)
