import pytest

from galcoh import groups as grp
from galcoh.global_model import three_place_model


@pytest.fixture(scope="session")
def c2():
    return grp.cyclic(2)


@pytest.fixture(scope="session")
def s3():
    return grp.symmetric(3)


@pytest.fixture(scope="session")
def three_place():
    return three_place_model()
