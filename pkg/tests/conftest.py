import os
import sys

import pytest
from hypothesis import strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from edgecolour.config import GroupedConfig, PartitionConfig
from edgecolour.adaptive import AdaptiveEngine
from edgecolour.dynamic_max import DynamicMaxEngine
from edgecolour.graph import SimpleGraph


@st.composite
def small_graphs(draw, min_n=1, max_n=10):
    """SimpleGraph on up to max_n vertices with an arbitrary edge subset."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph.from_edges(n, chosen)


@pytest.fixture
def max_engine():
    """Factory for fixed-threshold engines with debug assertions on."""
    def build(n=64, alpha=1, **kwargs):
        return DynamicMaxEngine(PartitionConfig.for_alpha(n, alpha, **kwargs), debug=True)
    return build


@pytest.fixture
def adaptive_engine():
    def build(n=64, **kwargs):
        return AdaptiveEngine(GroupedConfig.for_capacity(n, **kwargs), debug=True)
    return build


def replay(engine, stream):
    for event in stream:
        if event.op == '+':
            engine.insert(event.u, event.v)
        else:
            engine.delete(event.u, event.v)
        yield event
