"""
Defining equations of central curves.

A circuit C of the column matroid of L supports a dependence vector v
(L[:, C]·v = 0); the form Σ_{i∈C} v_i Π_{j∈C∖i} x_j vanishes on every x
whose coordinatewise reciprocal lies in the row space of L. Together with
the linear forms of the affine space these generate the curve ideal.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from centralcurve.algebra import univariate
from centralcurve.algebra.polynomial import SparsePolynomial, product, variable_names
from centralcurve.analysis.matroid import circuits, matroid_from_matrix
from centralcurve.core.errors import (
    DegenerateCost,
    IdenticalPoints,
    MismatchedShape,
    NotACircuit,
    RankDeficient,
    ZeroRestriction,
)
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import Side
from centralcurve.exact.matrix import (
    RationalMatrix,
    independent_rows,
    kernel_basis,
    primitive_integer_vector,
    rref,
    submatrix_det,
)
from centralcurve.exact.rational import as_fraction

logger = logging.getLogger(__name__)


# --- circuit polynomials ----------------------------------------------------------

def circuit_vector(L: RationalMatrix, circuit: Sequence[int]) -> tuple[int, ...]:
    """The dependence vector on `circuit`, integer, coprime, first entry positive."""
    cols = sorted(circuit)
    kernel = kernel_basis(L.select_columns(cols))
    if kernel.rows != 1:
        raise NotACircuit(f"Columns {list(cols)} have a {kernel.rows}-dimensional dependence space, expected 1")
    v = primitive_integer_vector(kernel.row(0))
    if any(x == 0 for x in v):
        raise NotACircuit(f"Dependence on columns {list(cols)} does not use every column: {v}")
    return v


def _circuit_form(coefficients: Mapping[int, Fraction | int], variables: Sequence[str]) -> SparsePolynomial:
    n = len(variables)
    support = sorted(coefficients)
    terms = {}
    for i in support:
        exps = [0] * n
        for j in support:
            if j != i:
                exps[j] = 1
        terms[tuple(exps)] = coefficients[i]
    return SparsePolynomial(variables, terms)


def circuit_polynomial(
    L: RationalMatrix,
    circuit: Sequence[int],
    variables: Sequence[str] | None = None,
) -> SparsePolynomial:
    """Primitive Σ_{i∈C} v_i Π_{j∈C∖i} x_j over x1..xn (or `variables`)."""
    variables = tuple(variables) if variables is not None else variable_names("x", L.cols)
    if len(variables) != L.cols:
        raise MismatchedShape(f"{len(variables)} variables for {L.cols} columns")
    cols = sorted(circuit)
    v = circuit_vector(L, cols)
    return _circuit_form(dict(zip(cols, v)), variables).primitive()


def circuit_polynomial_det(
    L: RationalMatrix,
    circuit: Sequence[int],
    variables: Sequence[str] | None = None,
) -> SparsePolynomial:
    """
    Same form from maximal minors: extend C to S with |S| = rank+1 and
    expand the (rank+1)-minor of (L; x⁻¹) on S along the reciprocal row.
    Columns of S∖C contribute zero minors, so the common monomial
    Π_{S∖C} x_j is divided out.
    """
    variables = tuple(variables) if variables is not None else variable_names("x", L.cols)
    rows = independent_rows(L)
    basis = L.select_rows(rows)
    r = len(rows)
    cols = sorted(circuit)
    if basis.select_columns(cols).rank() != len(cols) - 1:
        raise NotACircuit(f"Columns {cols} are not minimally dependent")
    support = list(cols)
    for j in range(L.cols):
        if len(support) == r + 1:
            break
        if j in support:
            continue
        if basis.select_columns(support + [j]).rank() > basis.select_columns(support).rank():
            support.append(j)
    support.sort()
    if len(support) != r + 1:
        raise NotACircuit(f"Cannot extend {cols} to {r + 1} columns of rank {r}")

    coefficients: dict[int, Fraction] = {}
    for k, i in enumerate(support):
        if i not in cols:
            continue
        rest = [j for j in support if j != i]
        minor = submatrix_det(basis, range(r), rest)
        coefficients[i] = minor if (r + k) % 2 == 0 else -minor
    if any(v == 0 for v in coefficients.values()):
        raise NotACircuit(f"A maximal minor vanishes on {cols}")
    return _circuit_form(coefficients, variables).primitive()


def sheet_generators(L: RationalMatrix, variables: Sequence[str] | None = None) -> list[SparsePolynomial]:
    """Circuit polynomials of every circuit of the column matroid of L, in circuit order."""
    m = matroid_from_matrix(L)
    return [circuit_polynomial(L, c, variables) for c in circuits(m)]


def linear_forms(A: RationalMatrix, b: Sequence[Fraction], variables: Sequence[str]) -> list[SparsePolynomial]:
    """A·v - b, one form per row."""
    return [SparsePolynomial.linear(variables, A.row(i), -as_fraction(b[i])) for i in range(A.rows)]


# ----------------------------- Public API ---------------------------------

def curve_ideal_generators(
    instance: LPInstance,
    side: Side = Side.PRIMAL,
    coordinates: str = "native",
) -> list[SparsePolynomial]:
    """
    Generators of the central curve ideal.

    primal:      circuit forms of M(A,c) in x, then A·x - b
    dual:        circuit forms of M(B,g) in s, then B·(s + c); with
                 coordinates="y" everything is rewritten through
                 s = Aᵀy - c and forms that vanish identically are dropped
    primal-dual: both families, both linear systems and x_i·s_i - x_{i+1}·s_{i+1}
    """
    n = instance.n
    xs = variable_names("x", n)
    ss = variable_names("s", n)
    match side:
        case Side.PRIMAL:
            return _primal_generators(instance, xs)
        case Side.DUAL:
            gens = _primal_generators(instance.dual(), ss)
            if coordinates == "y":
                return dual_in_y(instance, gens)
            return gens
        case Side.PRIMAL_DUAL:
            both = xs + ss
            primal = [g.with_variables(both) for g in _primal_generators(instance, xs)]
            dual = [g.with_variables(both) for g in _primal_generators(instance.dual(), ss)]
            bilinear = []
            for i in range(n - 1):
                bilinear.append(
                    SparsePolynomial(
                        both,
                        {
                            tuple(int(k in (i, n + i)) for k in range(2 * n)): 1,
                            tuple(int(k in (i + 1, n + i + 1)) for k in range(2 * n)): -1,
                        },
                    )
                )
            return primal + dual + bilinear
    raise ValueError(f"Unsupported side {side!r}")


def _primal_generators(instance: LPInstance, variables: Sequence[str]) -> list[SparsePolynomial]:
    L = instance.stacked_cost()
    if L.rank() == instance.d:
        raise DegenerateCost(f"Cost of {instance.name!r} lies in the row space of its constraint matrix")
    gens = sheet_generators(L, variables)
    logger.debug("%s: %d circuit generators", instance.name, len(gens))
    return gens + linear_forms(instance.A, instance.b, variables)


def dual_in_y(instance: LPInstance, generators: Sequence[SparsePolynomial]) -> list[SparsePolynomial]:
    """Rewrite polynomials in s1..sn through s_i = Σ_j a_ji·y_j - c_i."""
    ys = variable_names("y", instance.d)
    mapping = {
        f"s{i + 1}": SparsePolynomial.linear(ys, instance.A.col(i), -instance.c[i]) for i in range(instance.n)
    }
    out = []
    for g in generators:
        h = g.substitute(mapping, ys)
        if not h.is_zero():
            out.append(h)
    return out


def linear_substitutions(
    A: RationalMatrix,
    b: Sequence[Fraction],
    variables: Sequence[str],
    keep: Sequence[str],
) -> dict[str, SparsePolynomial]:
    """Solve A·v = b for the variables not in `keep` as affine forms in `keep`."""
    keep = list(keep)
    eliminated = [v for v in variables if v not in keep]
    order = [variables.index(v) for v in eliminated + keep]
    aug = A.select_columns(order).hstack(RationalMatrix.from_rows([[as_fraction(v)] for v in b]))
    r, pivots = rref(aug)
    if pivots != list(range(len(eliminated))):
        raise RankDeficient(f"Cannot solve for {eliminated} in terms of {keep}")
    out = {}
    width = len(order)
    for i, name in enumerate(eliminated):
        coeffs = [-r[i, len(eliminated) + k] for k in range(len(keep))]
        out[name] = SparsePolynomial.linear(keep, coeffs, r[i, width])
    return out


def eliminate_linear(f: SparsePolynomial, substitutions: Mapping[str, SparsePolynomial]) -> SparsePolynomial:
    """Replace each substituted variable by its affine form, over the remaining variables."""
    if not substitutions:
        return f
    return f.substitute(substitutions)


# --- planar curves -------------------------------------------------------------------

PLANAR_VARIABLES = ("y1", "y2")
PROJECTIVE_VARIABLES = ("y0", "y1", "y2")


def _planar_support(A: RationalMatrix, b: Sequence[Fraction], restrict_to_support: bool) -> tuple[list[Fraction], list[int]]:
    if A.rows != 2 or len(b) != 2:
        raise MismatchedShape(f"Planar curves need a 2-row matrix, got {A.rows} rows")
    if A.rank() != 2:
        raise RankDeficient("Planar constraint matrix must have rank 2")
    b1, b2 = (as_fraction(v) for v in b)
    weights = [b1 * A[1, i] - b2 * A[0, i] for i in range(A.cols)]
    support = [i for i, w in enumerate(weights) if w != 0 or not restrict_to_support]
    return weights, support


def planar_curve_poly(
    A: RationalMatrix,
    b: Sequence[Fraction],
    c: Sequence[Fraction],
    restrict_to_support: bool = True,
) -> SparsePolynomial:
    """
    C(y) = Σ_{i∈I} (b1·a_2i - b2·a_1i) Π_{j∈I∖i} (a_1j·y1 + a_2j·y2 - c_j),
    with I the columns of nonzero weight (all columns when not restricted).
    """
    weights, support = _planar_support(A, b, restrict_to_support)
    c = [as_fraction(v) for v in c]
    lines = {j: SparsePolynomial.linear(PLANAR_VARIABLES, [A[0, j], A[1, j]], -c[j]) for j in support}
    total = SparsePolynomial(PLANAR_VARIABLES)
    for i in support:
        if weights[i] == 0:
            continue
        total = total + product((lines[j] for j in support if j != i), PLANAR_VARIABLES) * weights[i]
    return total


def planar_line_product(
    A: RationalMatrix,
    b: Sequence[Fraction],
    c: Sequence[Fraction],
    restrict_to_support: bool = True,
) -> SparsePolynomial:
    """Π_{i∈I} (a_1i·y1 + a_2i·y2 - c_i·y0), homogeneous in (y0, y1, y2)."""
    _, support = _planar_support(A, b, restrict_to_support)
    c = [as_fraction(v) for v in c]
    return product(
        (SparsePolynomial.linear(PROJECTIVE_VARIABLES, [-c[i], A[0, i], A[1, i]]) for i in support),
        PROJECTIVE_VARIABLES,
    )


def renegar_derivative(f: SparsePolynomial, e: Sequence[Fraction | int]) -> SparsePolynomial:
    """d/dt f(y + t·e) at t = 0."""
    if len(e) != len(f.variables):
        raise MismatchedShape(f"Direction of length {len(e)} for variables {f.variables}")
    out = SparsePolynomial(f.variables)
    for name, ek in zip(f.variables, e):
        ek = as_fraction(ek)
        if ek != 0:
            out = out + f.partial(name) * ek
    return out


@dataclass(frozen=True)
class LineRestriction:
    degree: int
    real_roots: int  # distinct, the point at infinity included
    real_roots_with_multiplicity: int
    at_infinity: int  # multiplicity of the parameter value t = ∞


def line_restriction_real_roots(
    f: SparsePolynomial,
    p: Sequence[Fraction | int],
    q: Sequence[Fraction | int],
) -> LineRestriction:
    """
    Restrict a homogeneous f to the line {p + t·q} and count real roots of
    the univariate restriction with Sturm sequences. The degree drop of the
    restriction is the multiplicity of the root at q (t = ∞).
    """
    if len(p) != len(f.variables) or len(q) != len(f.variables):
        raise MismatchedShape(f"Points must have {len(f.variables)} coordinates")
    p = [as_fraction(v) for v in p]
    q = [as_fraction(v) for v in q]
    if RationalMatrix.from_rows([p, q]).rank() < 2:
        raise IdenticalPoints(f"{p} and {q} span no projective line")
    mapping = {name: SparsePolynomial.linear(("t",), [qk], pk) for name, pk, qk in zip(f.variables, p, q)}
    g = f.substitute(mapping, ("t",))
    if g.is_zero():
        raise ZeroRestriction(f"Polynomial vanishes on the line through {p} and {q}")
    coeffs = g.univariate_coefficients()
    total = f.degree
    at_infinity = total - g.degree
    distinct = univariate.count_real_roots(coeffs)
    with_mult = univariate.count_real_roots_with_multiplicity(coeffs)
    return LineRestriction(
        degree=total,
        real_roots=distinct + (1 if at_infinity else 0),
        real_roots_with_multiplicity=with_mult + at_infinity,
        at_infinity=at_infinity,
    )
