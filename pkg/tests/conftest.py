import pytest

from ffkakeya.ffield import make_field


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F7():
    return make_field(7)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)
