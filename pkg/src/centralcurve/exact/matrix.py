"""
Exact rational matrices.

All values are immutable; every operation returns a new RationalMatrix.
Row reduction is plain Gauss-Jordan over Fractions, determinants use
Bareiss elimination so that intermediate entries stay small.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from centralcurve.core.errors import MismatchedShape, RankDeficient
from centralcurve.exact.rational import as_fraction, lcm_of_denominators

Number = Fraction | int | str


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]  # row-major

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise MismatchedShape(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # --- construction -------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise MismatchedShape(f"Row {i} has {len(r)} entries, expected {width}")
        return cls(len(rows), width, tuple(as_fraction(v) for r in rows for v in r))

    @classmethod
    def from_vector(cls, values: Sequence[Number]) -> "RationalMatrix":
        """Single row."""
        return cls.from_rows([list(values)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    # --- access ------------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in self.row(i)] for i in range(self.rows)], dtype=float).reshape(
            self.rows, self.cols
        )

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    # --- algebra -----------------------------------------------------------------

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        )

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise MismatchedShape(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        other_cols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in other_cols:
                out.append(sum((a * b for a, b in zip(r, c)), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Number]) -> tuple[Fraction, ...]:
        """M·v for a plain vector."""
        if len(v) != self.cols:
            raise MismatchedShape(f"Vector of length {len(v)} does not match {self.cols} columns")
        vv = [as_fraction(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), vv)), Fraction(0)) for i in range(self.rows))

    def select_columns(self, cols: Iterable[int]) -> "RationalMatrix":
        cols = list(cols)
        return RationalMatrix(self.rows, len(cols), tuple(self[i, j] for i in range(self.rows) for j in cols))

    def select_rows(self, rows: Iterable[int]) -> "RationalMatrix":
        rows = list(rows)
        return RationalMatrix(len(rows), self.cols, tuple(v for i in rows for v in self.row(i)))

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows and other.rows and self.cols != other.cols:
            raise MismatchedShape(f"Cannot stack {self.cols} and {other.cols} columns")
        cols = self.cols if self.rows else other.cols
        return RationalMatrix(self.rows + other.rows, cols, self.entries + other.entries)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise MismatchedShape(f"Cannot place {self.rows} rows beside {other.rows} rows")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return RationalMatrix.from_rows(rows) if rows else RationalMatrix(0, self.cols + other.cols, ())

    def rank(self) -> int:
        return len(rref(self)[1])


# ----------------------------- Public API ---------------------------------

def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the increasing list of pivot columns."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for j in range(m.cols):
        if r >= m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][j] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        lead = a[r][j]
        a[r] = [v / lead for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
    flat = tuple(v for row in a for v in row)
    return RationalMatrix(m.rows, m.cols, flat), pivots


def kernel_basis(m: RationalMatrix) -> RationalMatrix:
    """Rows form a basis of {v : M v = 0}; one row per free column of the rref."""
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    if not basis:
        return RationalMatrix(0, m.cols, ())
    return RationalMatrix.from_rows(basis)


def submatrix_det(m: RationalMatrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Exact determinant of the square submatrix on rows x cols (Bareiss)."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise MismatchedShape(f"Need a square selection, got {len(rows)} rows and {len(cols)} columns")
    k = len(rows)
    if k == 0:
        return Fraction(1)
    a = [[m[i, j] for j in cols] for i in rows]
    return _bareiss(a)


def determinant(m: RationalMatrix) -> Fraction:
    return submatrix_det(m, range(m.rows), range(m.cols))


def _bareiss(a: list[list[Fraction]]) -> Fraction:
    k = len(a)
    sign = 1
    prev = Fraction(1)
    for p in range(k - 1):
        if a[p][p] == 0:
            swap = next((i for i in range(p + 1, k) if a[i][p] != 0), None)
            if swap is None:
                return Fraction(0)
            a[p], a[swap] = a[swap], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev
        prev = a[p][p]
    return sign * a[k - 1][k - 1]


def integer_determinant(a: list[list[int]]) -> int:
    """Bareiss on an integer matrix; every division is exact."""
    a = [list(r) for r in a]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            swap = next((i for i in range(p + 1, k) if a[i][p] != 0), None)
            if swap is None:
                return 0
            a[p], a[swap] = a[swap], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sign * a[k - 1][k - 1]


def integer_rows(m: RationalMatrix) -> list[list[int]]:
    """Each row scaled by the lcm of its denominators (same row space, same matroid)."""
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = lcm_of_denominators(r)
        out.append([int(v * den) for v in r])
    return out


def independent_rows(m: RationalMatrix) -> list[int]:
    """Indices of a maximal set of linearly independent rows (first ones kept)."""
    return rref(m.transpose())[1]


def solve(m: RationalMatrix, rhs: Sequence[Number]) -> tuple[Fraction, ...]:
    """Unique solution of the square system M x = rhs."""
    if m.rows != m.cols or len(rhs) != m.rows:
        raise MismatchedShape(f"solve needs a square system, got {m.rows}x{m.cols} with {len(rhs)} values")
    aug = m.hstack(RationalMatrix.from_rows([[v] for v in rhs]))
    r, pivots = rref(aug)
    if pivots != list(range(m.cols)):
        raise RankDeficient(f"Singular {m.rows}x{m.cols} system")
    return tuple(r[i, m.cols] for i in range(m.rows))


def min_norm_solution(m: RationalMatrix, rhs: Sequence[Number]) -> tuple[Fraction, ...]:
    """x = Mᵀ (M Mᵀ)⁻¹ rhs for a full-row-rank M."""
    w = solve(m @ m.transpose(), rhs)
    return m.transpose().apply(w)


def primitive_integer_vector(v: Sequence[Number]) -> tuple[int, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    vv = [as_fraction(x) for x in v]
    den = lcm_of_denominators(vv)
    nums = [int(x * den) for x in vv]
    g = 0
    for k in nums:
        g = gcd(g, k)
    if g == 0:
        raise ValueError("Cannot normalise the zero vector")
    first = next(k for k in nums if k != 0)
    if first < 0:
        g = -g
    return tuple(k // g for k in nums)
