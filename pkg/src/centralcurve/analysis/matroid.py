"""
Linear matroids over the rationals and the invariants attached to them:
circuits, duals, the broken circuit complex with its f- and h-vectors,
the Tutte polynomial and the Möbius number.

Ground set elements are 0-based column indices; subsets are bitmasks.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from centralcurve.algebra.polynomial import SparsePolynomial
from centralcurve.core.errors import InternalInconsistency, ZeroMatrix
from centralcurve.exact.matrix import RationalMatrix, independent_rows, integer_determinant, integer_rows

logger = logging.getLogger(__name__)

TUTTE_VARIABLES = ("x", "y")


def mask_of(elements: Iterable[int]) -> int:
    out = 0
    for e in elements:
        out |= 1 << e
    return out


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    rank: int
    bases: frozenset[int]

    def __post_init__(self) -> None:
        if not self.bases:
            raise ValueError("A matroid needs at least one basis")
        if any(b.bit_count() != self.rank for b in self.bases):
            raise ValueError(f"All bases must have size {self.rank}")

    @property
    def ground(self) -> int:
        return (1 << self.ground_size) - 1

    def rank_of(self, mask: int) -> int:
        return max((mask & b).bit_count() for b in self.bases)

    def is_independent(self, mask: int) -> bool:
        return any(mask & b == mask for b in self.bases)

    def loops(self) -> tuple[int, ...]:
        used = 0
        for b in self.bases:
            used |= b
        return elements_of(self.ground & ~used)

    def coloops(self) -> tuple[int, ...]:
        common = self.ground
        for b in self.bases:
            common &= b
        return elements_of(common)

    def is_uniform(self) -> bool:
        return len(self.bases) == comb(self.ground_size, self.rank)

    def permuted(self, perm: Sequence[int]) -> "Matroid":
        """Relabel element e as perm[e]."""
        return Matroid(
            self.ground_size,
            self.rank,
            frozenset(mask_of(perm[e] for e in elements_of(b)) for b in self.bases),
        )

    def basis_list(self) -> list[tuple[int, ...]]:
        return sorted(elements_of(b) for b in self.bases)


# ----------------------------- Public API ---------------------------------

def matroid_from_matrix(m: RationalMatrix) -> Matroid:
    """Column matroid: S is a basis iff the columns on S span the column space."""
    if m.rows == 0 or m.is_zero():
        raise ZeroMatrix(f"Cannot build a matroid from a zero {m.rows}x{m.cols} matrix")
    rows = integer_rows(m.select_rows(independent_rows(m)))
    r = len(rows)
    bases = set()
    for subset in combinations(range(m.cols), r):
        det = integer_determinant([[row[j] for j in subset] for row in rows])
        if det != 0:
            bases.add(mask_of(subset))
    logger.debug("matroid of %dx%d matrix: rank %d, %d bases", m.rows, m.cols, r, len(bases))
    return Matroid(m.cols, r, frozenset(bases))


def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, r, frozenset(mask_of(s) for s in combinations(range(n), r)))


def circuits(m: Matroid) -> list[tuple[int, ...]]:
    """All minimal dependent sets, sorted lexicographically (as sorted tuples)."""
    found: set[int] = set()
    for b in m.bases:
        for e in elements_of(m.ground & ~b):
            c = 1 << e
            for f in elements_of(b):
                if (b & ~(1 << f)) | (1 << e) in m.bases:
                    c |= 1 << f
            found.add(c)
    return sorted(elements_of(c) for c in found)


def dual(m: Matroid) -> Matroid:
    return Matroid(m.ground_size, m.ground_size - m.rank, frozenset(m.ground & ~b for b in m.bases))


def cocircuits(m: Matroid) -> list[tuple[int, ...]]:
    return circuits(dual(m))


def broken_circuits(m: Matroid) -> list[int]:
    """Inclusion-minimal broken circuits (circuit minus its smallest element) as bitmasks."""
    broken = sorted({mask_of(c[1:]) for c in circuits(m)}, key=lambda x: (x.bit_count(), x))
    minimal: list[int] = []
    for bc in broken:
        if not any(other & bc == other for other in minimal):
            minimal.append(bc)
    return minimal


def broken_circuit_fvector(m: Matroid) -> list[int]:
    """f_{-1}, f_0, ..., f_{r-1} of the broken circuit complex (all zero if it is void)."""
    broken = broken_circuits(m)
    counts = [0] * (m.rank + 1)
    if any(bc == 0 for bc in broken):
        return counts  # a loop: the empty set is already a broken circuit
    by_max: dict[int, list[int]] = {}
    for bc in broken:
        by_max.setdefault(bc.bit_length() - 1, []).append(bc)

    def extend(face: int, size: int, start: int) -> None:
        counts[size] += 1
        if size == m.rank:
            return
        for e in range(start, m.ground_size):
            new = face | (1 << e)
            # only broken circuits whose largest element is e can be newly completed
            if any(bc & new == bc for bc in by_max.get(e, ())):
                continue
            extend(new, size + 1, e + 1)

    extend(0, 0, 0)
    return counts


def h_from_f(f: Sequence[int], r: int) -> list[int]:
    """Coefficients h_0..h_r of Σ_i f_{i-1} z^i (1-z)^{r-i}."""
    h = [0] * (r + 1)
    for i, fi in enumerate(f):
        for k in range(i, r + 1):
            h[k] += fi * comb(r - i, k - i) * (-1) ** (k - i)
    return h


def h_vector(m: Matroid) -> list[int]:
    """
    h_0..h_{r-1} from the f-vector, cross-checked against the Tutte
    evaluation z^r·T(1/z, 0).
    """
    f = broken_circuit_fvector(m)
    h = h_from_f(f, m.rank)
    tutte = tutte_polynomial(m)
    t = [0] * (m.rank + 1)
    for (i, j), v in tutte.terms.items():
        if j == 0:
            t[i] = int(v)
    from_tutte = [t[m.rank - i] for i in range(m.rank + 1)]
    if h != from_tutte:
        raise InternalInconsistency(f"h-vector {h} from the f-vector disagrees with the Tutte evaluation {from_tutte}")
    if h and h[-1] != 0:
        raise InternalInconsistency(f"Top h-entry {h[-1]} of a cone must vanish")
    return h[: m.rank]


Terms = tuple[tuple[tuple[int, int], int], ...]


def tutte_polynomial(m: Matroid) -> SparsePolynomial:
    """Deletion-contraction with loop/coloop base cases, memoised per call on the bases signature."""
    memo: dict[tuple[int, frozenset[int]], Terms] = {}

    def tutte(ground: int, bases: frozenset[int]) -> Terms:
        key = (ground, bases)
        if key not in memo:
            memo[key] = _deletion_contraction(ground, bases, tutte)
        return memo[key]

    terms = tutte(m.ground, m.bases)
    logger.debug("Tutte polynomial of a rank-%d matroid on %d elements: %d minors", m.rank, m.ground_size, len(memo))
    return SparsePolynomial(TUTTE_VARIABLES, dict(terms))


def _deletion_contraction(ground: int, bases: frozenset[int], tutte: Callable[[int, frozenset[int]], Terms]) -> Terms:
    if ground == 0:
        return (((0, 0), 1),)
    e = (ground & -ground).bit_length() - 1
    bit = 1 << e
    rest = ground & ~bit
    with_e = frozenset(b for b in bases if b & bit)
    without_e = frozenset(b for b in bases if not b & bit)
    if not with_e:  # loop
        return _shift(tutte(rest, bases), 0, 1)
    if not without_e:  # coloop
        return _shift(tutte(rest, frozenset(b & ~bit for b in with_e)), 1, 0)
    deletion = dict(tutte(rest, without_e))
    for k, v in tutte(rest, frozenset(b & ~bit for b in with_e)):
        deletion[k] = deletion.get(k, 0) + v
    return tuple(sorted(deletion.items()))


def _shift(terms: Terms, dx: int, dy: int) -> Terms:
    return tuple(((i + dx, j + dy), v) for (i, j), v in terms)


def mobius_number(m: Matroid) -> int:
    """|μ(M)| = Σ h_i."""
    return sum(h_vector(m))


def uniform_h_vector(r: int, n: int) -> list[int]:
    """h_i = C(n-r+i-1, i) for U_{r,n}, i = 0..r-1."""
    return [comb(n - r + i - 1, i) for i in range(r)]
