import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from magmas import build, enumerate_preorders


@pytest.fixture(scope="session")
def chain3():
    return build("abc", [("a", "b"), ("b", "c")])


@pytest.fixture(scope="session")
def antichain2():
    return build("ab")


@pytest.fixture(scope="session")
def antichain3():
    return build("abc")


@pytest.fixture(scope="session")
def twocycle():
    return build("ab", [("a", "b"), ("b", "a")])


@pytest.fixture(scope="session")
def models_by_size():
    """All labeled pre-orders, keyed by carrier size, shared across tests."""
    return {n: list(enumerate_preorders(n, bound=4)) for n in (1, 2, 3, 4)}
