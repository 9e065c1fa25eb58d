import pytest

from klbasis.coxeter import group_from_name
from klbasis.klbase import KLStore, build_wgraph


@pytest.fixture(scope="session")
def groups():
    """Group tables built once per session, keyed by preset name."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = group_from_name(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def stores(groups):
    """KL stores (shared, fully reusable) keyed by preset name."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = KLStore(groups(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def wgraphs(stores):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_wgraph(stores(name))
        return cache[name]

    return get
