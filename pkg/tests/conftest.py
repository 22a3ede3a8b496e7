"""Shared fixtures.

The windowed-basis construction with its rank certificate is the expensive
object in the suite; it is built once per session and shared between the
module tests and the acceptance battery (action caches accumulate on the
instance, so sharing also speeds up later tests).
"""

import random

import pytest

from ogzkit import EvalPoint, Ring, build_basis_B


@pytest.fixture(scope="session")
def ring21() -> Ring:
    return Ring((2, 1), 2)


@pytest.fixture(scope="session")
def ring11() -> Ring:
    return Ring((1, 1), 2)


@pytest.fixture(scope="session")
def singular_point() -> EvalPoint:
    # two equal values in row 1, a fresh tag in row 2
    return EvalPoint.make(
        (2, 1), {(1, 1): (1, 0), (1, 2): (1, 0), (2, 1): (2, 0)}
    )


@pytest.fixture(scope="session")
def singular_window(singular_point):
    """The radius-3 window over the doubled point, with rank certificate."""
    return build_basis_B(singular_point, 3)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(902188)
