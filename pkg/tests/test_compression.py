import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import colourings, graphs
from matchram.coloured import ColouredGraph, is_hyperforest, k_hypergraph
from matchram.compression import (
    LemmaViolation,
    PreconditionError,
    c_isolate,
    cd_saturate,
    cd_saturate_trace,
    check_small_components,
    decycle,
    distil,
    write_trace,
)
from matchram.connector import cl_extremal, sample_s_connector, split_star_colouring
from matchram.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    ge_decompose,
    matching_number,
    path_graph,
)
from matchram.suites import _ad_pure_colouring, check_distil_output, distil_instance


def c4_p3():
    return disjoint_union(cycle_graph(4), path_graph(3))


class TestCDSaturate:
    def test_identity_when_g_is_host(self):
        g = cycle_graph(5)
        assert cd_saturate(g, g) == g

    def test_identity_without_c(self):
        g = path_graph(3)
        assert cd_saturate(g, complete_graph(3)) == g

    def test_perfect_matching_means_no_d(self):
        g = disjoint_union(cycle_graph(4), path_graph(2))
        assert cd_saturate(g, complete_graph(6)) == g

    def test_real_iteration(self):
        g = c4_p3()
        out, added = cd_saturate_trace(g, complete_graph(7), s=1)
        assert added
        dec = ge_decompose(out)
        assert matching_number(out) == 3
        assert not complete_graph(7).edges_between(dec.C, dec.D)

    def test_rejects_non_subgraph(self):
        with pytest.raises(PreconditionError):
            cd_saturate(complete_graph(3), path_graph(3))

    @given(st.integers(2, 10), st.integers(1, 3), st.integers(0, 2**32), st.floats(0, 1))
    @settings(max_examples=60)
    def test_contract(self, n, s, seed, keep):
        host = complete_graph(n) if s == 1 else sample_s_connector(n, s, seed)
        rng = random.Random(seed)
        g = Graph(n, frozenset(e for e in host.edges if rng.random() < keep))
        out = cd_saturate(g, host, s=s)
        c = len(ge_decompose(out).C)
        assert matching_number(out) == matching_number(g)
        assert c < s or c > n - 2 * s


class TestCIsolate:
    def test_identity_without_c(self):
        g = cycle_graph(5)
        assert c_isolate(g) == g

    def test_c4(self):
        assert c_isolate(cycle_graph(4)) == empty_graph(4)

    def test_c4_p3(self):
        out = c_isolate(c4_p3())
        assert out.edges == {(4, 5), (5, 6)}
        assert ge_decompose(out).A == {5}

    @given(graphs(max_n=10))
    @settings(max_examples=200)
    def test_contract(self, g):
        before = ge_decompose(g)
        out = c_isolate(g)
        after = ge_decompose(out)
        assert not after.C and after.A == before.A
        assert matching_number(out) == matching_number(g) - len(before.C) // 2


class TestDecycle:
    def test_identity_when_already_acyclic(self):
        cg = ColouredGraph(cycle_graph(5), (frozenset(), cycle_graph(5).edges))
        out, T = decycle(cg)
        assert T == frozenset() and out == cg

    def test_p3(self):
        cg = ColouredGraph(path_graph(3), (frozenset(), path_graph(3).edges))
        out, T = decycle(cg)
        assert 1 in T and not out.layers[1]
        assert out.nu_sigma() <= cg.nu_sigma() - len(T)

    def test_two_triangles(self):
        cg = ColouredGraph.from_layers(4, [[], [(0, 1), (0, 2), (1, 2)], [(1, 2), (1, 3), (2, 3)]])
        out, T = decycle(cg)
        assert is_hyperforest(k_hypergraph(out))

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            decycle(ColouredGraph.from_layers(3, [[], []], host=path_graph(3)))
        with pytest.raises(PreconditionError):
            decycle(ColouredGraph(cycle_graph(4), (frozenset(), cycle_graph(4).edges)))

    @given(st.integers(1, 10), st.integers(1, 3), st.integers(0, 2**32))
    @settings(max_examples=100)
    def test_contract(self, n, q, seed):
        cg = _ad_pure_colouring(random.Random(seed), n, q)
        out, T = decycle(cg)
        assert out.is_proper_for(T) and out.is_d_acyclic()
        assert out.nu_sigma() <= cg.nu_sigma() - len(T)


class TestDistil:
    def test_precondition_nu(self):
        k5 = complete_graph(5)
        with pytest.raises(PreconditionError):
            distil(ColouredGraph(k5, (frozenset(), k5.edges)), 1)

    def test_precondition_connector(self):
        g = empty_graph(6).with_edges([(0, 1)])
        cg = ColouredGraph(g, (frozenset(), g.edges))
        with pytest.raises(PreconditionError):
            distil(cg, 2)

    def test_k7_extremal(self):
        # the extremal colouring for (3,3) lives on K7 with nu = (2, 2)
        _, cg = cl_extremal((3, 3))
        assert cg.n == 7 and cg.nu_vector() == (2, 2)
        res = distil(cg, 1)
        assert 2 * res.kappa >= 7 - len(res.T) - 1
        assert check_distil_output(cg, 1, res) == []

    def test_trace(self, tmp_path):
        _, cg = cl_extremal((3, 3))
        res = distil(cg, 1)
        path = tmp_path / "trace.jsonl"
        write_trace(res, str(path))
        events = [json.loads(line) for line in path.read_text().splitlines()]
        stages = [e["stage"] for e in events]
        assert stages[0] == "input" and stages[-1] == "dominant"
        assert events[-1]["detail"]["kappa"] == res.kappa

    @pytest.mark.parametrize("seed", range(15))
    def test_random_two_connector(self, seed):
        rng = random.Random(seed)
        cg = distil_instance(rng, 12, 2, 2)
        assert cg is not None
        res = distil(cg, 2)
        assert check_distil_output(cg, 2, res) == []

    @pytest.mark.parametrize("seed", range(10))
    def test_unchecked_matches_checked(self, seed):
        cg = distil_instance(random.Random(seed), 10, 1, 3)
        a, b = distil(cg, 1), distil(cg, 1, checked=False)
        assert (a.T, a.c_star, a.eta, a.kappa, a.k_prime) == (b.T, b.c_star, b.eta, b.kappa, b.k_prime)


class TestSmallComponents:
    def test_complete_host(self):
        k5 = complete_graph(5)
        cg = ColouredGraph(k5, (frozenset(), k5.edges))
        rep = check_small_components(cg, 1)
        assert rep.largest == set(range(5)) and rep.outside == 0

    def test_split_star_is_cyclic(self):
        # the two stars share all of the independent side
        _, cg = split_star_colouring(2, 2)
        with pytest.raises(PreconditionError):
            check_small_components(cg, 2)

    def test_rejects_cyclic(self):
        _, cg = cl_extremal((2, 2))
        with pytest.raises(PreconditionError):
            check_small_components(cg, 1)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_pipeline_outputs(self, s):
        rng = random.Random(100 + s)
        seen = 0
        while seen < 8:
            cg = distil_instance(rng, rng.randint(2 * s + 2, 16), s, 2)
            if cg is None:
                continue
            sub, _ = distil(cg, s).restricted()
            if sub.n < 2:
                continue
            seen += 1
            rep = check_small_components(sub, s)
            assert rep.outside <= 13 * (s - 1) and rep.large_edges <= 1
