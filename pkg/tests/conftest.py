import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import enumerate_graphs  # noqa: E402


@pytest.fixture(scope="session")
def graph_levels_7():
    """All graphs up to isomorphism for n <= 7, keyed by order."""
    return enumerate_graphs(7)


@pytest.fixture(scope="session")
def connected_upto_7(graph_levels_7):
    return {n: [g for g in gs if g.is_connected()] for n, gs in graph_levels_7.items()}


@pytest.fixture(scope="session")
def connected_upto_8(graph_levels_7, connected_upto_7):
    from indigame.graphs import Graph, LabeledPair, canonical_key

    seen = {}
    for parent in graph_levels_7[7]:
        pe = list(parent.edges)
        for mask in range(1 << 7):
            edges = pe + [(i, 7) for i in range(7) if mask >> i & 1]
            g = Graph.build(range(8), edges)
            key = canonical_key(LabeledPair(g, None))
            if key not in seen:
                seen[key] = g
    out = dict(connected_upto_7)
    out[8] = [g for g in seen.values() if g.is_connected()]
    return out
