from typing import Sequence


class CentralCurveError(Exception):
    """Root of every error raised by the centralcurve package."""


# --- input errors --------------------------------------------------------------

class MismatchedShape(CentralCurveError, ValueError):
    pass


class ZeroMatrix(CentralCurveError, ValueError):
    pass


class NotACircuit(CentralCurveError, ValueError):
    pass


class RankDeficient(CentralCurveError, ValueError):
    pass


class DegenerateCost(CentralCurveError, ValueError):
    """The cost vector lies in the row space of A, so M_{A,c} does not gain rank."""


class Infeasible(CentralCurveError, ValueError):
    pass


class IdenticalPoints(CentralCurveError, ValueError):
    pass


class ZeroRestriction(CentralCurveError, ValueError):
    pass


class AmbientNot2D(CentralCurveError, ValueError):
    pass


class NotPlanar(CentralCurveError, ValueError):
    pass


class UnknownExample(CentralCurveError, ValueError):
    def __init__(self, name: str, known: Sequence[str]) -> None:
        super().__init__(f"Unknown example {name!r}; known examples: {', '.join(known)}")
        self.name = name
        self.known = list(known)


class InstanceParseError(CentralCurveError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


# --- runtime / numeric errors ------------------------------------------------------

class InternalInconsistency(CentralCurveError, RuntimeError):
    pass


class LimitExceeded(CentralCurveError, RuntimeError):
    pass


class NewtonDivergence(CentralCurveError, RuntimeError):
    def __init__(self, message: str, sign: str | None = None, lam: float | None = None) -> None:
        details = []
        if sign is not None:
            details.append(f"region {sign}")
        if lam is not None:
            details.append(f"lambda={lam:.6e}")
        suffix = f" [{', '.join(details)}]" if details else ""
        super().__init__(f"{message}{suffix}")
        self.sign = sign
        self.lam = lam


class LeftRegion(CentralCurveError, RuntimeError):
    def __init__(self, lam: float) -> None:
        super().__init__(f"Newton step would leave the region at lambda={lam:.6e}")
        self.lam = lam


class NotConverged(CentralCurveError, RuntimeError):
    def __init__(self, message: str, best_estimate: float) -> None:
        super().__init__(f"{message} (best estimate {best_estimate:.9f})")
        self.best_estimate = best_estimate
