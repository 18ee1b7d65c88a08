import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from centralcurve.core.errors import Infeasible, MismatchedShape, RankDeficient, ZeroMatrix
from centralcurve.exact.matrix import (
    RationalMatrix,
    independent_rows,
    kernel_basis,
    min_norm_solution,
    solve,
)
from centralcurve.exact.rational import as_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPInstance:
    """
    The linear program  max cᵀx  s.t.  Ax = b, x ≥ 0  together with its
    kernel data: rows of B span ker A, and A g = b.

    A always has full row rank; redundant rows of the input are dropped by
    `from_data` (together with their right-hand sides, after checking they
    are consistent).
    """

    A: RationalMatrix
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    B: RationalMatrix
    g: tuple[Fraction, ...]
    name: str = "instance"

    @classmethod
    def from_data(
        cls,
        A: RationalMatrix | Sequence[Sequence[Fraction | int | str]],
        b: Sequence[Fraction | int | str],
        c: Sequence[Fraction | int | str],
        name: str = "instance",
    ) -> "LPInstance":
        a = A if isinstance(A, RationalMatrix) else RationalMatrix.from_rows(A)
        b = tuple(as_fraction(v) for v in b)
        c = tuple(as_fraction(v) for v in c)
        if a.rows == 0 or a.is_zero():
            raise ZeroMatrix(f"Constraint matrix of {name!r} is zero")
        if len(b) != a.rows:
            raise MismatchedShape(f"b has {len(b)} entries but A has {a.rows} rows")
        if len(c) != a.cols:
            raise MismatchedShape(f"c has {len(c)} entries but A has {a.cols} columns")

        keep = independent_rows(a)
        augmented = a.hstack(RationalMatrix.from_rows([[v] for v in b]))
        if augmented.rank() > len(keep):
            raise Infeasible(f"Right-hand side of {name!r} is inconsistent with the dependent rows of A")
        if len(keep) < a.rows:
            logger.info("%s: dropped %d dependent row(s) of A", name, a.rows - len(keep))

        a_red = a.select_rows(keep)
        b_red = tuple(b[i] for i in keep)
        return cls(
            A=a_red,
            b=b_red,
            c=c,
            B=kernel_basis(a_red),
            g=min_norm_solution(a_red, b_red),
            name=name,
        )

    # --- shape ---------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def d(self) -> int:
        return self.A.rows

    # --- derived data ------------------------------------------------------------------

    def dual(self) -> "LPInstance":
        """
        The instance (B, -B·c, -g) whose primal variable is this instance's
        slack s = Aᵀy - c and whose slack is this instance's x.
        Applying dual() twice returns the original triple.
        """
        if self.B.rows == 0:
            raise RankDeficient(f"{self.name!r} has d = n; the dual arrangement is a single point")
        bc = self.B.apply(self.c)
        return LPInstance(
            A=self.B,
            b=tuple(-v for v in bc),
            c=tuple(-v for v in self.g),
            B=self.A,
            g=tuple(-v for v in self.c),
            name=f"{self.name}-dual",
        )

    def stacked_cost(self) -> RationalMatrix:
        """(A; cᵀ): its row space is L_{A,c}."""
        return self.A.vstack(RationalMatrix.from_vector(self.c))

    def stacked_dual(self) -> RationalMatrix:
        """(B; gᵀ): its row space is L_{B,g}."""
        return self.B.vstack(RationalMatrix.from_vector(self.g))

    def y_from_s(self, s: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Exact y with Aᵀy = s + c (normal equations)."""
        rhs = self.A.apply([si + ci for si, ci in zip(s, self.c)])
        return solve(self.A @ self.A.transpose(), rhs)

    @cached_property
    def scale(self) -> float:
        """1 + ‖c‖∞·‖g‖∞, the unit for the default lambda range."""
        cmax = max((abs(float(v)) for v in self.c), default=0.0)
        gmax = max((abs(float(v)) for v in self.g), default=0.0)
        return 1.0 + cmax * gmax

    @cached_property
    def arrays(self) -> "FloatData":
        return FloatData(
            A=self.A.to_numpy(),
            b=np.array([float(v) for v in self.b]),
            c=np.array([float(v) for v in self.c]),
        )


@dataclass(frozen=True)
class FloatData:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
