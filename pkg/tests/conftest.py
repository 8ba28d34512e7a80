import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fincat import instances


@pytest.fixture(scope="session")
def finset2():
    return instances.make_finset(2)


@pytest.fixture(scope="session")
def finset3():
    return instances.make_finset(3)


@pytest.fixture(scope="session")
def pointed2():
    return instances.make_pointed_sets(2)


@pytest.fixture(scope="session")
def pointed3():
    return instances.make_pointed_sets(3)


@pytest.fixture(scope="session")
def finab4():
    return instances.make_finab(4)


@pytest.fixture(scope="session")
def finab6():
    return instances.make_finab(6)


@pytest.fixture(scope="session")
def div6():
    return instances.make_finab(6, divisors_only=True)


@pytest.fixture(scope="session")
def div12():
    return instances.make_finab(12, divisors_only=True, override_cap=True)


@pytest.fixture(scope="session")
def graph21():
    return instances.make_fingraph(2, 1)


@pytest.fixture(scope="session")
def graph22():
    return instances.make_fingraph(2, 2)
