from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from centralcurve.core.instance import LPInstance
from centralcurve.io.examples import EXAMPLE_NAMES, example


def load_example(name: str, variant: str | None = None) -> LPInstance:
    return example(name).to_instance(variant)


def random_instance(
    rng: np.random.Generator, d: int, n: int, name: str = "random", generic: bool = False
) -> LPInstance:
    """
    Integer A with entries in [-5, 5], b = A·x for a random positive x, generic-looking rational c.
    With `generic`, draws repeat until every d columns of A and every d + 1 columns of (A; c) are independent.
    """
    while True:
        A = rng.integers(-5, 6, size=(d, n))
        x = [Fraction(int(v), 7) for v in rng.integers(1, 20, size=n)]
        c = [Fraction(int(p), int(q)) for p, q in zip(rng.integers(-9, 10, size=n), rng.integers(11, 40, size=n))]
        if np.linalg.matrix_rank(A) == d and (not generic or _uniform(A, c)):
            break
    b = [sum(Fraction(int(a)) * xi for a, xi in zip(row, x)) for row in A]
    return LPInstance.from_data([[int(v) for v in row] for row in A], b, c, name=name)


def _uniform(A: np.ndarray, c: list[Fraction]) -> bool:
    stacked = np.vstack([A, [float(v) for v in c]])
    d, n = A.shape
    return all(
        abs(np.linalg.det(A[:, cols])) > 1e-9 for cols in map(list, combinations(range(n), d))
    ) and all(
        abs(np.linalg.det(stacked[:, cols])) > 1e-9 for cols in map(list, combinations(range(n), d + 1))
    )


@pytest.fixture(scope="session")
def hexagon() -> LPInstance:
    return load_example("hexagon")


@pytest.fixture(scope="session")
def hexagon_prime() -> LPInstance:
    return load_example("hexagon", "c-prime")


@pytest.fixture(scope="session")
def klee_minty() -> LPInstance:
    return load_example("klee-minty")


@pytest.fixture(scope="session")
def dtz() -> LPInstance:
    return load_example("dtz-snake")


@pytest.fixture(scope="session")
def moment_curve() -> LPInstance:
    return load_example("moment-curve-2x5")


@pytest.fixture(scope="session")
def disjoint_support() -> LPInstance:
    return load_example("disjoint-support")


@pytest.fixture(scope="session")
def heptagon() -> LPInstance:
    return load_example("heptagon")


@pytest.fixture(scope="session")
def generic_3x6() -> LPInstance:
    return load_example("generic-3x6")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(267)


@pytest.fixture(params=EXAMPLE_NAMES)
def example_name(request) -> str:
    return request.param
