import sys
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from matchram.coloured import ColouredGraph
from matchram.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def colourings(draw, min_n=1, max_n=8, max_q=3):
    g = draw(graphs(min_n, max_n))
    q = draw(st.integers(1, max_q))
    colour_of = {e: draw(st.integers(1, q)) for e in g.sorted_edges}
    return ColouredGraph.from_assignment(g, q, colour_of)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def c5():
    from matchram.graph import cycle_graph
    return cycle_graph(5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
