"""
JSON instance documents.

    {
      "name": "hexagon",
      "A": [["1", "1", "1", "0", "0", "0"], ...],
      "b": ["3", "3", "2", "2", "2"],
      "c": ["0", "0", "0", "0", "1", "3"],
      "signs": "++++++",
      "notes": "...",
      "variants": {"c-prime": {"c": ["0", "0", "0", "0", "1", "2"]}}
    }

Entries of A, b and c are rational strings ("p" or "p/q"); bare JSON
integers are accepted, floats are not.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from centralcurve.core.errors import InstanceParseError, MismatchedShape, ZeroMatrix
from centralcurve.core.instance import LPInstance
from centralcurve.core.types import parse_signs
from centralcurve.exact.rational import format_rational, parse_rational

logger = logging.getLogger(__name__)

_KNOWN_KEYS = {"name", "A", "b", "c", "signs", "notes", "variants"}


class _FloatLiteral(str):
    """Marker for a JSON float met while decoding."""


def _position(text: str, literal: str) -> tuple[int, int] | tuple[None, None]:
    m = re.search(rf"(?<![\w.]){re.escape(literal)}(?![\w.])", text)
    if m is None:
        return None, None
    line = text.count("\n", 0, m.start()) + 1
    column = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
    return line, column


class _Decoder:
    """Turns decoded JSON values into exact rationals, locating failures in the source text."""

    def __init__(self, text: str) -> None:
        self.text = text

    def fail(self, message: str, literal: str | None = None) -> InstanceParseError:
        line, column = _position(self.text, literal) if literal else (None, None)
        return InstanceParseError(message, line, column)

    def rational(self, value: Any, where: str) -> Fraction:
        match value:
            case _FloatLiteral():
                raise self.fail(f"{where}: float {value} is not an exact rational; write it as a string", str(value))
            case bool():
                raise self.fail(f"{where}: expected a rational, got {value!r}")
            case int():
                return Fraction(value)
            case str():
                try:
                    return parse_rational(value)
                except ValueError as err:
                    raise self.fail(f"{where}: {err}", f'"{value}"') from None
            case _:
                raise self.fail(f"{where}: expected a rational string, got {type(value).__name__}")

    def vector(self, value: Any, where: str) -> tuple[Fraction, ...]:
        if not isinstance(value, list):
            raise self.fail(f"{where} must be a list")
        return tuple(self.rational(v, f"{where}[{i}]") for i, v in enumerate(value))

    def matrix(self, value: Any, where: str) -> tuple[tuple[Fraction, ...], ...]:
        if not isinstance(value, list) or not value:
            raise self.fail(f"{where} must be a non-empty list of rows")
        return tuple(self.vector(row, f"{where}[{i}]") for i, row in enumerate(value))


@dataclass(frozen=True)
class InstanceFile:
    name: str
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    signs: str | None = None  # informational, not read by any command
    notes: str | None = None
    variants: dict[str, dict[str, tuple[Fraction, ...]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cols = len(self.A[0]) if self.A else 0
        if any(len(row) != cols for row in self.A):
            raise MismatchedShape(f"Rows of A in {self.name!r} have different lengths")
        if len(self.b) != len(self.A):
            raise MismatchedShape(f"b has {len(self.b)} entries but A has {len(self.A)} rows")
        if len(self.c) != cols:
            raise MismatchedShape(f"c has {len(self.c)} entries but A has {cols} columns")
        if all(v == 0 for row in self.A for v in row):
            raise ZeroMatrix(f"Constraint matrix of {self.name!r} is zero")
        if self.signs is not None and len(parse_signs(self.signs)) != cols:
            raise MismatchedShape(f"signs {self.signs!r} do not have {cols} entries")
        for variant, data in self.variants.items():
            for key, vec in data.items():
                expected = len(self.b) if key == "b" else cols
                if len(vec) != expected:
                    raise MismatchedShape(f"variant {variant!r}: {key} has {len(vec)} entries, expected {expected}")

    @property
    def variant_names(self) -> list[str]:
        return sorted(self.variants)

    def to_instance(self, variant: str | None = None) -> LPInstance:
        b, c, name = self.b, self.c, self.name
        if variant is not None:
            if variant not in self.variants:
                known = ", ".join(self.variant_names) or "none"
                raise KeyError(f"{self.name!r} has no variant {variant!r} (known: {known})")
            data = self.variants[variant]
            b, c = data.get("b", b), data.get("c", c)
            name = f"{name}-{variant}"
        return LPInstance.from_data(self.A, b, c, name=name)

    # --- serialisation -----------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "name": self.name,
            "A": [[format_rational(v) for v in row] for row in self.A],
            "b": [format_rational(v) for v in self.b],
            "c": [format_rational(v) for v in self.c],
        }
        if self.signs is not None:
            doc["signs"] = self.signs
        if self.notes is not None:
            doc["notes"] = self.notes
        if self.variants:
            doc["variants"] = {
                k: {key: [format_rational(v) for v in vec] for key, vec in sorted(data.items())}
                for k, data in sorted(self.variants.items())
            }
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> "InstanceFile":
        try:
            doc = json.loads(text, parse_float=_FloatLiteral)
        except json.JSONDecodeError as err:
            raise InstanceParseError(err.msg, err.lineno, err.colno) from None
        if not isinstance(doc, dict):
            raise InstanceParseError("Instance document must be a JSON object", 1, 1)
        unknown = set(doc) - _KNOWN_KEYS
        if unknown:
            logger.warning("ignoring unknown instance keys: %s", ", ".join(sorted(unknown)))
        for key in ("A", "b", "c"):
            if key not in doc:
                raise InstanceParseError(f"Missing required key {key!r}")

        dec = _Decoder(text)
        variants = {}
        for variant, data in (doc.get("variants") or {}).items():
            if not isinstance(data, dict) or not set(data) <= {"b", "c"}:
                raise dec.fail(f"variants.{variant} may only override 'b' and 'c'", f'"{variant}"')
            variants[variant] = {k: dec.vector(v, f"variants.{variant}.{k}") for k, v in data.items()}
        try:
            return cls(
                name=str(doc.get("name", "instance")),
                A=dec.matrix(doc["A"], "A"),
                b=dec.vector(doc["b"], "b"),
                c=dec.vector(doc["c"], "c"),
                signs=doc.get("signs"),
                notes=doc.get("notes"),
                variants=variants,
            )
        except (MismatchedShape, ZeroMatrix, ValueError) as err:
            if isinstance(err, InstanceParseError):
                raise
            raise InstanceParseError(str(err)) from None

    @classmethod
    def load(cls, path: str | Path) -> "InstanceFile":
        return cls.loads(Path(path).read_text(encoding="utf-8"))
