from fractions import Fraction

import pytest
from hypothesis import settings

from qpmult import FlowSpec, make_field, validate_flow
from qpmult.flowfile import example_path, load_flow

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def sqrt3():
    return make_field([-3, 0, 1], [1, 2])


@pytest.fixture
def cbrt2():
    return make_field([-2, 0, 0, 1], [Fraction(5, 4), Fraction(4, 3)])


@pytest.fixture
def phi():
    return validate_flow(load_flow(example_path("ex_sqrt3_phi.flow")))


@pytest.fixture
def psi():
    return validate_flow(load_flow(example_path("ex_sqrt3_psi.flow")))


@pytest.fixture
def cubic_flow():
    return validate_flow(load_flow(example_path("ex_cubic.flow")))


@pytest.fixture
def formal3():
    return validate_flow(FlowSpec.formal([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
