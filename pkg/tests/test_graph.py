import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs, to_nx
from matchram import oracles
from matchram.graph import (
    Graph,
    GraphError,
    WeightedForest,
    balanced_subset,
    complete_graph,
    cycle_graph,
    empty_graph,
    ge_decompose,
    induced,
    is_factor_critical,
    is_weighted_centroid,
    matching_number,
    max_matching,
    nu_between,
    path_graph,
    petersen_graph,
    remove_vertex,
    star_graph,
    weighted_centroid,
)


class TestGraph:
    def test_rejects_loops_and_out_of_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(1, 1)])
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 3)])

    def test_duplicate_edges_collapse(self):
        g = Graph.from_edges(3, [(0, 1), (1, 0)])
        assert g.m == 1 and g.has_edge(1, 0)

    @given(graphs())
    def test_adjacency_matches_edges(self, g):
        for u in range(g.n):
            for v in range(g.n):
                assert (v in g.adj[u]) == g.has_edge(u, v)
        assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


class TestMatching:
    def test_examples(self):
        assert matching_number(empty_graph(4)) == 0
        assert matching_number(complete_graph(4)) == 2
        assert matching_number(petersen_graph()) == 5

    def test_petersen_against_brute_force(self):
        assert oracles.brute_nu(petersen_graph()) == 5

    @given(graphs(max_n=10))
    @settings(max_examples=300)
    def test_against_brute_force(self, g):
        M = max_matching(g)
        assert M.is_valid_in(g)
        assert len(M) == oracles.brute_nu(g)

    @given(graphs(max_n=14))
    @settings(max_examples=200)
    def test_against_networkx(self, g):
        assert matching_number(g) == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))

    def test_deterministic(self):
        g = cycle_graph(7)
        assert max_matching(g).edges == max_matching(g).edges


class TestGallaiEdmonds:
    def test_path(self):
        dec = ge_decompose(path_graph(3))
        assert (dec.D, dec.A, dec.C) == ({0, 2}, {1}, set())

    def test_c4(self):
        dec = ge_decompose(cycle_graph(4))
        assert dec.C == set(range(4)) and not dec.A and not dec.D

    def test_c5(self):
        dec = ge_decompose(cycle_graph(5))
        assert dec.D == set(range(5)) and not dec.A and not dec.C

    @given(graphs(max_n=8))
    @settings(max_examples=300)
    def test_against_brute_force(self, g):
        dec = ge_decompose(g)
        assert (dec.C, dec.A, dec.D) == oracles.brute_ge(g)

    @given(graphs(max_n=9))
    @settings(max_examples=200)
    def test_deficiency_and_factor_critical(self, g):
        dec = ge_decompose(g)
        assert g.n - 2 * matching_number(g) == len(dec.d_components) - len(dec.A)
        for K in dec.d_components:
            assert is_factor_critical(induced(g, K)[0])

    @given(graphs(max_n=8))
    @settings(max_examples=100)
    def test_stability_under_deleting_a(self, g):
        dec = ge_decompose(g)
        for v in dec.A:
            sub, labels = remove_vertex(g, v)
            d2 = ge_decompose(sub)
            assert {labels[x] for x in d2.D} == dec.D
            assert {labels[x] for x in d2.A} == dec.A - {v}


class TestFactorCritical:
    def test_examples(self):
        assert is_factor_critical(cycle_graph(5))
        assert is_factor_critical(empty_graph(1))
        assert not is_factor_critical(path_graph(3))

    @given(graphs(max_n=8))
    @settings(max_examples=200)
    def test_against_brute_force(self, g):
        assert is_factor_critical(g) == oracles.brute_factor_critical(g)


class TestSubgraphs:
    def test_induced_k4(self):
        sub, labels = induced(complete_graph(4), {0, 1, 2})
        assert sub == complete_graph(3) and labels == [0, 1, 2]

    def test_remove_centre_of_p3(self):
        sub, _ = remove_vertex(path_graph(3), 1)
        assert sub == empty_graph(2)

    @given(graphs())
    def test_induced_on_everything_is_identity(self, g):
        assert induced(g, range(g.n))[0] == g


class TestNuBetween:
    def test_k4(self):
        assert nu_between(complete_graph(4), {0, 1}, {2, 3}) == 2

    def test_c5_has_no_edge_from_01_to_3(self):
        # the cycle 0-1-2-3-4-0 has no edge between {0,1} and {3}
        assert nu_between(cycle_graph(5), {0, 1}, {3}) == 0

    def test_empty_side(self):
        assert nu_between(petersen_graph(), set(), {1, 2}) == 0

    @given(graphs(max_n=8), st.data())
    @settings(max_examples=200)
    def test_against_brute_force(self, g, data):
        X = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
        Y = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
        eligible = [e for e in g.edges if (e[0] in X and e[1] in Y) or (e[1] in X and e[0] in Y)]
        assert nu_between(g, X, Y) == oracles.brute_nu_edges(eligible)


class TestCentroid:
    def test_single_vertex(self):
        assert weighted_centroid(WeightedForest(empty_graph(1), (5,))) == 0

    def test_path(self):
        assert weighted_centroid(WeightedForest(path_graph(3), (1, 1, 1))) == 1

    def test_star(self):
        f = WeightedForest(star_graph(4), (1,) * 5)
        assert weighted_centroid(f) == 0
        assert [v for v in range(5) if is_weighted_centroid(f, v)] == [0]

    def test_rejects_cycle(self):
        with pytest.raises(GraphError):
            WeightedForest(cycle_graph(3), (1, 1, 1))

    @given(st.integers(1, 12), st.integers(0, 2**32), st.data())
    def test_random_forest(self, n, seed, data):
        rng = random.Random(seed)
        edges = [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.8]
        ws = tuple(data.draw(st.integers(0, 5)) for _ in range(n))
        f = WeightedForest(Graph.from_edges(n, edges), ws)
        assert is_weighted_centroid(f, weighted_centroid(f))


class TestBalancedSubset:
    def test_examples(self):
        assert len(balanced_subset([1, 1, 1])) == 1
        assert balanced_subset([2, 1, 1, 1, 1]) == [0]
        assert len(balanced_subset([1, 1])) == 1

    def test_precondition(self):
        with pytest.raises(ValueError):
            balanced_subset([5, 1])

    @given(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=10), min_size=2, max_size=12))
    def test_sum_in_range(self, xs):
        total = sum(xs)
        if any(3 * x > 2 * total for x in xs):
            return
        pick = balanced_subset(xs)
        got = sum(xs[i] for i in pick)
        assert total / 3 <= got <= 2 * total / 3
