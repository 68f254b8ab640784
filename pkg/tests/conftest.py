import pytest

from kssearch.ksdata import fixture


@pytest.fixture(scope="session")
def min10a():
    return fixture("G_min10A").graph


@pytest.fixture(scope="session")
def aow17():
    return fixture("G_AOW17").graph
