from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class Side(Enum):
    PRIMAL = "primal"
    DUAL = "dual"
    PRIMAL_DUAL = "primal-dual"


class EndpointKind(Enum):
    ANALYTIC_CENTER = "analytic-center"
    VERTEX = "vertex"
    UNCLASSIFIED = "unclassified"


SignVector = tuple[int, ...]  # entries are +1 / -1


def parse_signs(text: str) -> SignVector:
    """'+-+' -> (1, -1, 1)."""
    out = []
    for ch in text.strip():
        match ch:
            case "+":
                out.append(1)
            case "-":
                out.append(-1)
            case _:
                raise ValueError(f"Sign vector may only contain '+' and '-', got {text!r}")
    return tuple(out)


def format_signs(sign: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in sign)


@dataclass(frozen=True)
class Endpoint:
    kind: EndpointKind
    label: str | None = None  # center sign vector or basis, e.g. "{1,2,5}"
    distance: float | None = None  # relative distance to the nearest candidate
    basis: tuple[int, ...] | None = None  # 0-based, vertex endpoints only


def format_basis(basis: Sequence[int]) -> str:
    """0-based basis -> 1-based '{1,2,5}' label."""
    return "{" + ",".join(str(i + 1) for i in sorted(basis)) + "}"
