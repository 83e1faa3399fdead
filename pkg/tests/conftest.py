import pytest

from dp5brauer import model


@pytest.fixture(scope="session")
def m11():
    return model.fixture("zeta11plus")


@pytest.fixture(scope="session")
def m25():
    return model.fixture("zeta25")


@pytest.fixture(scope="session")
def built11(m11):
    # one rebuild shared by every test that compares against the fixture
    return model.build_model(m11.spec)
