"""
Built-in instances, written out exactly in rationals.
"""
from fractions import Fraction as F

from centralcurve.core.errors import UnknownExample
from centralcurve.io.base import InstanceSource
from centralcurve.io.instance_file import InstanceFile

EXAMPLE_NAMES = (
    "dtz-snake",
    "hexagon",
    "klee-minty",
    "moment-curve-2x5",
    "disjoint-support",
    "heptagon",
    "generic-3x6",
    "identity2",
)


def _vec(*values: object) -> tuple[F, ...]:
    return tuple(F(v) for v in values)


def dtz_snake() -> InstanceFile:
    return InstanceFile(
        name="dtz-snake",
        A=(
            _vec(0, -1, 1, -1, 1, -1),
            _vec(-1, F(1, 10), F(1, 3), F(100, 11), F(1000, 11), F(10000, 11)),
        ),
        b=_vec(0, 1),
        c=_vec(-1, F(-1, 2), F(-1, 3), F(-449989, 990000), F(-359989, 792000), F(-299989, 660000)),
        signs="++++++",
        notes="Snake-like dual central path: a hexagon with ten bounded dual cells; trace it with --side dual.",
    )


def hexagon() -> InstanceFile:
    return InstanceFile(
        name="hexagon",
        A=(
            _vec(1, 1, 1, 0, 0, 0),
            _vec(0, 0, 0, 1, 1, 1),
            _vec(1, 0, 0, 1, 0, 0),
            _vec(0, 1, 0, 0, 1, 0),
            _vec(0, 0, 1, 0, 0, 1),
        ),
        b=_vec(3, 3, 2, 2, 2),
        c=_vec(0, 0, 0, 0, 1, 3),
        signs="++++++",
        notes="Transportation polytope of K_{2,3}: rank 4, the fifth row is dependent. Primal curve is a quintic.",
        variants={"c-prime": {"c": _vec(0, 0, 0, 0, 1, 2)}},
    )


def klee_minty(eps: F = F(1, 10)) -> InstanceFile:
    return InstanceFile(
        name="klee-minty",
        A=(
            _vec(1, 1, 0, 0, 0, 0),
            _vec(2 * eps, 0, 1, 1, 0, 0),
            _vec(2 * eps**2, 0, 2 * eps, 0, 1, 1),
        ),
        b=_vec(1, 1, 1),
        c=_vec(F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 11), F(1, 13)),
        signs="++++++",
        notes=f"Klee-Minty cube in slack form with eps = {eps}.",
    )


def moment_curve_2x5() -> InstanceFile:
    return InstanceFile(
        name="moment-curve-2x5",
        A=(_vec(1, 1, 1, 1, 1), _vec(0, 1, 2, 3, 4)),
        b=_vec(1, F(5, 2)),
        c=_vec(F(1, 3), F(-2, 7), F(1, 5), F(3, 11), F(-1, 13)),
        notes="Uniform rank-2 matrix on 5 points with a generic cost; primal curve lives in a 3-space.",
    )


def disjoint_support() -> InstanceFile:
    return InstanceFile(
        name="disjoint-support",
        A=(_vec(1, -1, 0, 0), _vec(0, 1, 1, -1)),
        b=_vec(1, 2),
        c=_vec(F(1, 3), F(-1, 5), F(1, 7), F(2, 11)),
        notes="Non-generic A: the circuit {3,4} and cocircuit {1,2} have disjoint supports.",
    )


def heptagon() -> InstanceFile:
    # rational points on the unit circle, no two antiparallel
    nodes = (F(0), F(1, 3), F(1), F(2), F(-4), F(-3, 2), F(-2, 3))
    cols = [((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)) for t in nodes]
    return InstanceFile(
        name="heptagon",
        A=(tuple(u for u, _ in cols), tuple(v for _, v in cols)),
        b=_vec(F(1, 3), F(1, 5)),
        c=_vec(*([-1] * 7)),
        notes="Seven lines tangent to the unit circle; the dual feasible region is a heptagon.",
    )


def generic_3x6() -> InstanceFile:
    nodes = (-2, -1, 0, 1, 2, 3)
    return InstanceFile(
        name="generic-3x6",
        A=(_vec(*[1] * 6), _vec(*nodes), _vec(*[t * t for t in nodes])),
        b=_vec(1, F(1, 2), F(1, 4)),
        c=_vec(F(1, 2), F(-1, 3), F(2, 5), F(1, 7), F(-3, 11), F(5, 13)),
        notes="Vandermonde matrix: M(A) is uniform, every 3-subset is a basis.",
    )


def identity2() -> InstanceFile:
    return InstanceFile(
        name="identity2",
        A=(_vec(1, 0), _vec(0, 1)),
        b=_vec(1, 2),
        c=_vec(1, 1),
        notes="d = n: the feasible set is a single point.",
    )


def example(name: str) -> InstanceFile:
    match name:
        case "dtz-snake":
            return dtz_snake()
        case "hexagon":
            return hexagon()
        case "klee-minty":
            return klee_minty()
        case "moment-curve-2x5":
            return moment_curve_2x5()
        case "disjoint-support":
            return disjoint_support()
        case "heptagon":
            return heptagon()
        case "generic-3x6":
            return generic_3x6()
        case "identity2":
            return identity2()
        case _:
            raise UnknownExample(name, EXAMPLE_NAMES)


class ExampleSource(InstanceSource):
    def __init__(self, name: str) -> None:
        if name not in EXAMPLE_NAMES:
            raise UnknownExample(name, EXAMPLE_NAMES)
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    def load(self) -> InstanceFile:
        return example(self._name)
