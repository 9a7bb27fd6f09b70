import pytest

from hpint import build_u_table, build_w_table


@pytest.fixture(scope="session")
def w6():
    return build_w_table(6)


@pytest.fixture(scope="session")
def u6():
    return build_u_table(6)


@pytest.fixture(scope="session")
def w10():
    return build_w_table(10)
