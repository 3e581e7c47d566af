"""Shared fixtures: atlases are expensive enough to build once per session."""

import pytest

from lamination_invariants.angles import Angle
from lamination_invariants.atlas import Atlas
from lamination_invariants.portraits import enumerate_portraits


@pytest.fixture(scope="session")
def atlas3() -> Atlas:
    return Atlas.build(3)


@pytest.fixture(scope="session")
def atlas5() -> Atlas:
    return Atlas.build(5)


@pytest.fixture(scope="session")
def atlas8() -> Atlas:
    return Atlas.build(8)


@pytest.fixture(scope="session")
def portraits8():
    return enumerate_portraits(8)


@pytest.fixture(scope="session")
def named(atlas5):
    """Well-known components of the period 5 atlas, looked up by a root angle."""
    roots = {
        "basilica": "1/3",
        "rabbit": "1/7",
        "corabbit": "5/7",
        "airplane": "3/7",
        "kokopelli": "3/15",
        "basilica_bulb": "6/15",
        "left": "11/31",
        "right": "19/31",
    }
    found = {name: atlas5.query_by_angle(Angle.parse(theta)) for name, theta in roots.items()}
    found["main"] = atlas5.main_cardioid
    return found
