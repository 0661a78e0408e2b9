import pytest

from ffgrowth import build_field


@pytest.fixture
def F5():
    return build_field(5)


@pytest.fixture
def F7():
    return build_field(7)


@pytest.fixture
def F16():
    return build_field(2, 4)
