from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any

from centralcurve.exact.rational import format_rational


class InstanceAnalysis(ABC):
    @abstractmethod
    def analyze(self) -> dict[str, Any]:
        pass


def pi_multiple(coeff: Fraction | int | None) -> dict[str, str] | None:
    """Exact k·π as {"coeff": "p/q", "unit": "pi"}."""
    if coeff is None:
        return None
    return {"coeff": format_rational(Fraction(coeff)), "unit": "pi"}
