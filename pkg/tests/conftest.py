import hypothesis
import pytest

from zonotiling import (
    classify_graph,
    enumerate_tilings,
    regular_node_set,
    standard_config,
)

hypothesis.settings.register_profile(
    "default", max_examples=40, deadline=None
)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def graphs():
    """Memoized flip graphs keyed by n (standard coordinates a_i = i)."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_tilings(standard_config(n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def certificates(graphs):
    """Memoized per-node regularity certificates keyed by n."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = classify_graph(standard_config(n), graphs(n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def regulars(certificates):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = regular_node_set(certificates(n))
        return cache[n]

    return get
