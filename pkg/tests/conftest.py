from fractions import Fraction

import pytest
from hypothesis import settings

from ellgen.bundleops import ProjBundle
from ellgen.cohring import LinearClass, builtin_manifold

settings.register_profile("ci", max_examples=25, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def cp2():
    return builtin_manifold("CP2")


@pytest.fixture(scope="session")
def cp4():
    return builtin_manifold("CP4")


@pytest.fixture(scope="session")
def x_class(cp2):
    return LinearClass.generator(cp2.presentation, "x")


@pytest.fixture(scope="session")
def zero_class(cp2):
    return LinearClass.zero(cp2.presentation)


@pytest.fixture(scope="session")
def o1_bundle(cp2, x_class, zero_class):
    return ProjBundle(rank=1, roots=(x_class,), twist_b=zero_class)


@pytest.fixture(scope="session")
def trivial_line(cp2, zero_class):
    return ProjBundle(rank=1, roots=(zero_class,), twist_b=zero_class)


@pytest.fixture(scope="session")
def matched_bundle(cp2, x_class, zero_class):
    # sum of shifted squares equals the tangent p1: three copies of x
    return ProjBundle(rank=3, roots=(x_class, x_class, x_class), twist_b=zero_class)


@pytest.fixture(scope="session")
def half_x(cp2, x_class):
    return x_class.scale(Fraction(1, 2))
