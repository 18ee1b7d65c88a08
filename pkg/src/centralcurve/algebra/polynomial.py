"""
Sparse multivariate polynomials with exact rational coefficients.

Exponent vectors are dense tuples aligned with `variables`. Monomials are
ordered graded-lex with x1 < x2 < ... (the last variable is the largest),
which fixes the canonical text form and the leading coefficient used for
normalisation.
"""
import re
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from centralcurve.core.errors import MismatchedShape
from centralcurve.exact.rational import format_rational, lcm_of_denominators

Scalar = Fraction | int
Exponent = tuple[int, ...]

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_NUMBER_RE = re.compile(r"^\d+(/\d+)?$")
_VARIABLE_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def monomial_key(exps: Exponent) -> tuple[int, ...]:
    """Graded-lex key with the last variable largest; bigger key = bigger monomial."""
    return (sum(exps),) + tuple(reversed(exps))


class SparsePolynomial:
    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None) -> None:
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Repeated variable names in {self.variables}")
        clean: dict[Exponent, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise MismatchedShape(f"Exponent {exps} does not match variables {self.variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"Negative exponent in {exps}")
            q = Fraction(coef)
            if q != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + q
                if clean[exps] == 0:
                    del clean[exps]
        self.terms: dict[Exponent, Fraction] = clean

    # --- construction -------------------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> "SparsePolynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "SparsePolynomial":
        variables = tuple(variables)
        exps = tuple(int(v == name) for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not one of {variables}")
        return cls(variables, {exps: 1})

    @classmethod
    def linear(cls, variables: Sequence[str], coefficients: Sequence[Scalar], constant: Scalar = 0) -> "SparsePolynomial":
        """Σ coefficients[i]·variables[i] + constant."""
        variables = tuple(variables)
        if len(coefficients) != len(variables):
            raise MismatchedShape(f"{len(coefficients)} coefficients for {len(variables)} variables")
        terms: dict[Exponent, Scalar] = {(0,) * len(variables): constant}
        for i, a in enumerate(coefficients):
            terms[tuple(int(k == i) for k in range(len(variables)))] = a
        return cls(variables, terms)

    # --- basic properties ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        k = self.variables.index(name)
        return max((e[k] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def coefficient(self, exps: Exponent) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def norm1(self) -> Fraction:
        return sum((abs(v) for v in self.terms.values()), Fraction(0))

    # --- arithmetic -------------------------------------------------------------------

    def _lift(self, other: "SparsePolynomial | Scalar") -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.variables != self.variables:
                raise MismatchedShape(f"Variables differ: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other: "SparsePolynomial | Scalar") -> "SparsePolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, v in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + v
        return SparsePolynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.variables, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other: "SparsePolynomial | Scalar") -> "SparsePolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "SparsePolynomial":
        return (-self) + other

    def __mul__(self, other: "SparsePolynomial | Scalar") -> "SparsePolynomial":
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(self.variables, {e: v * other for e, v in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + v1 * v2
        return SparsePolynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePolynomial":
        if k < 0:
            raise ValueError("Negative powers are not polynomials")
        result = SparsePolynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.variables, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # --- calculus and transformations ------------------------------------------------

    def evaluate(self, point: Sequence | Mapping[str, object]) -> object:
        """Evaluate at a point given positionally or by name; works for Fractions and floats."""
        if isinstance(point, Mapping):
            values = [point[v] for v in self.variables]
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise MismatchedShape(f"Point of length {len(values)} for variables {self.variables}")
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        total = 0
        for exps, coef in self.terms.items():
            term = coef if exact else float(coef)
            for v, e in zip(values, exps):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def partial(self, name: str) -> "SparsePolynomial":
        k = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exps, coef in self.terms.items():
            if exps[k]:
                e = list(exps)
                e[k] -= 1
                terms[tuple(e)] = coef * exps[k]
        return SparsePolynomial(self.variables, terms)

    def homogenize(self, name: str) -> "SparsePolynomial":
        """Insert a new first variable `name` making every term of full degree."""
        if name in self.variables:
            raise ValueError(f"{name!r} already used")
        top = max(self.degree, 0)
        return SparsePolynomial(
            (name,) + self.variables,
            {(top - sum(e),) + e: v for e, v in self.terms.items()},
        )

    def with_variables(self, variables: Sequence[str]) -> "SparsePolynomial":
        """Re-embed into another variable list; variables that occur must be kept."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        terms: dict[Exponent, Fraction] = {}
        for exps, coef in self.terms.items():
            e = [0] * len(variables)
            for name, k in zip(self.variables, exps):
                if k:
                    if name not in index:
                        raise ValueError(f"Variable {name!r} occurs in the polynomial but not in {variables}")
                    e[index[name]] = k
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + coef
        return SparsePolynomial(variables, terms)

    def substitute(
        self,
        mapping: Mapping[str, "SparsePolynomial"],
        variables: Sequence[str] | None = None,
    ) -> "SparsePolynomial":
        """
        Replace variables by polynomials. The result lives over `variables`
        (default: the variables that are not substituted, in their order).
        """
        target = tuple(variables) if variables is not None else tuple(v for v in self.variables if v not in mapping)
        images: dict[str, SparsePolynomial] = {}
        for name in self.variables:
            if name in mapping:
                images[name] = mapping[name].with_variables(target)
            else:
                images[name] = SparsePolynomial.variable(target, name) if name in target else None
        powers: dict[tuple[str, int], SparsePolynomial] = {}

        def power(name: str, k: int) -> SparsePolynomial:
            key = (name, k)
            if key not in powers:
                powers[key] = images[name] if k == 1 else power(name, k - 1) * images[name]
            return powers[key]

        result = SparsePolynomial(target)
        for exps, coef in self.terms.items():
            term = SparsePolynomial.constant(target, coef)
            for name, k in zip(self.variables, exps):
                if k:
                    if images[name] is None:
                        raise ValueError(f"Variable {name!r} is neither substituted nor kept")
                    term = term * power(name, k)
            result = result + term
        return result

    def map_coefficients(self, fn: Callable[[Fraction], Fraction]) -> "SparsePolynomial":
        return SparsePolynomial(self.variables, {e: fn(v) for e, v in self.terms.items()})

    def primitive(self) -> "SparsePolynomial":
        """Integer coprime coefficients with a positive leading coefficient."""
        if self.is_zero():
            return self
        den = lcm_of_denominators(self.terms.values())
        nums = [int(v * den) for v in self.terms.values()]
        g = 0
        for k in nums:
            g = gcd(g, k)
        factor = Fraction(den, g)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self * factor

    def equal_up_to_scalar(self, other: "SparsePolynomial") -> bool:
        return self.primitive() == other.primitive()

    def univariate_coefficients(self) -> list[Fraction]:
        """Coefficients low -> high for a polynomial in a single variable."""
        if len(self.variables) != 1:
            raise MismatchedShape(f"Not univariate: {self.variables}")
        out = [Fraction(0)] * (max(self.degree, 0) + 1)
        for (e,), v in self.terms.items():
            out[e] = v
        return out

    # --- text form -------------------------------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for i, (exps, coef) in enumerate(self.sorted_terms()):
            factors = [
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.variables, exps) if k
            ]
            mag = abs(coef)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{format_rational(mag)}*" + "*".join(factors)
            else:
                body = format_rational(mag)
            if i == 0:
                pieces.append(f"-{body}" if coef < 0 else body)
            else:
                pieces.append(f" - {body}" if coef < 0 else f" + {body}")
        return "".join(pieces)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "SparsePolynomial":
        compact = "".join(text.split())
        if not compact:
            raise ValueError("Empty polynomial text")
        raw_terms: list[tuple[Fraction, dict[str, int]]] = []
        consumed = 0
        for m in _TERM_RE.finditer(compact):
            if m.start() != consumed:
                raise ValueError(f"Cannot parse polynomial near position {consumed}: {text!r}")
            consumed = m.end()
            chunk = m.group(0)
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk.lstrip("+-")
            coef = Fraction(sign)
            powers: dict[str, int] = {}
            for factor in chunk.split("*"):
                if _NUMBER_RE.match(factor):
                    coef *= Fraction(factor)
                    continue
                vm = _VARIABLE_RE.match(factor)
                if vm is None:
                    raise ValueError(f"Bad factor {factor!r} in {text!r}")
                name, k = vm.group(1), int(vm.group(2) or 1)
                powers[name] = powers.get(name, 0) + k
            raw_terms.append((coef, powers))
        if consumed != len(compact):
            raise ValueError(f"Trailing characters in polynomial {text!r}")

        if variables is None:
            names = {name for _, p in raw_terms for name in p}
            variables = sorted(names, key=_natural_key)
        variables = tuple(variables)
        terms: dict[Exponent, Fraction] = {}
        for coef, powers in raw_terms:
            unknown = set(powers) - set(variables)
            if unknown:
                raise ValueError(f"Unknown variables {sorted(unknown)} for {variables}")
            e = tuple(powers.get(v, 0) for v in variables)
            terms[e] = terms.get(e, Fraction(0)) + coef
        return cls(variables, terms)

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.to_text()!r}, variables={self.variables})"

    def __str__(self) -> str:
        return self.to_text()


def _natural_key(name: str) -> tuple[str, int]:
    m = re.match(r"^(.*?)(\d*)$", name)
    prefix, digits = m.group(1), m.group(2)
    return prefix, int(digits) if digits else -1


def product(polys: Iterable[SparsePolynomial], variables: Sequence[str]) -> SparsePolynomial:
    out = SparsePolynomial.constant(variables, 1)
    for p in polys:
        out = out * p
    return out


def variable_names(prefix: str, count: int) -> tuple[str, ...]:
    """('x1', ..., 'xn')."""
    return tuple(f"{prefix}{i + 1}" for i in range(count))
