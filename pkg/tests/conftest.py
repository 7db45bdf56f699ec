import pathlib

import pytest

from floorsum.arith import sieve_mangoldt
from floorsum.constant import constant_enclosure

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def repo_root() -> pathlib.Path:
    return REPO_ROOT


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_mangoldt(10**4)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_mangoldt(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return sieve_mangoldt(10**7)


@pytest.fixture(scope="session")
def enclosures():
    """Constant enclosures at the depths shared across tests."""
    return {d: constant_enclosure(d) for d in (10**5, 10**6, 10**7, 10**8)}


@pytest.fixture(scope="session")
def enclosure_1e9():
    return constant_enclosure(10**9)
