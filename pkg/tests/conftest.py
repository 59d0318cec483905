from fractions import Fraction

import pytest

from divlab.arith.multiquad import Tower
from divlab.config import DivLabConfig
from divlab.curves.curve import Curve
from divlab.galois.groups import example_group


@pytest.fixture
def example_curve() -> Curve:
    return Curve(Fraction(-171), Fraction(810), "paper-sec6")


@pytest.fixture
def example_point():
    return Fraction(10), Fraction(10)


@pytest.fixture(scope="session")
def example_matrix_group():
    return example_group()


@pytest.fixture
def abscissa_tower() -> Tower:
    return Tower((-1, 2, 3, 7))


@pytest.fixture
def config() -> DivLabConfig:
    return DivLabConfig()
