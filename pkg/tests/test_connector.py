import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from matchram import oracles
from matchram.coloured import SearchGuardExceeded
from matchram.connector import (
    TVector,
    alpha_star,
    bipartition,
    cl_extremal,
    construction_refutes,
    gen_complete_split,
    gen_gnp,
    gen_odd_cycle,
    gen_random_regular,
    gnp_adversary_colouring,
    is_s_connector,
    konig_colouring,
    konig_cover,
    sample_s_connector,
    sharp_construction,
    split_star_colouring,
)
from matchram.graph import (
    Graph,
    add_isolated,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    matching_number,
    nu_between,
    path_graph,
)


class TestTVector:
    def test_accessors(self):
        t = TVector.parse("3,1,2")
        assert t.q == 3 and t.lam() == 3 and t.tmax() == 3 and str(t) == "3,1,2"

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            TVector.of(2, 0)


class TestConnector:
    def test_complete(self):
        assert is_s_connector(complete_graph(6), 1).verdict

    def test_c5(self):
        assert is_s_connector(cycle_graph(5), 2).verdict

    def test_k4_plus_isolated(self):
        assert is_s_connector(add_isolated(complete_graph(4), 1), 2).verdict

    def test_witness_is_a_hole(self):
        cert = is_s_connector(empty_graph(4), 2)
        X, Y = cert.witness
        assert not cert.verdict and len(X) == len(Y) == 2 and not X & Y

    def test_guard(self):
        with pytest.raises(SearchGuardExceeded, match="--guard-n"):
            is_s_connector(complete_graph(40), 2)

    @given(graphs(max_n=8), st.integers(1, 4))
    @settings(max_examples=200)
    def test_against_brute_force(self, g, s):
        assert is_s_connector(g, s).verdict == oracles.brute_s_connector(g, s)

    def test_alpha_star_examples(self):
        assert alpha_star(complete_graph(6)) == 0
        assert alpha_star(empty_graph(4)) == 2
        assert alpha_star(cycle_graph(5)) == 1

    @given(graphs(max_n=8))
    @settings(max_examples=100)
    def test_alpha_star_against_brute_force(self, g):
        assert alpha_star(g) == oracles.brute_alpha_star(g)

    @given(graphs(min_n=2, max_n=8))
    @settings(max_examples=100)
    def test_connector_iff_small_alpha_star(self, g):
        a = alpha_star(g)
        for s in range(1, g.n // 2 + 1):
            assert is_s_connector(g, s).verdict == (a <= s - 1)

    @pytest.mark.parametrize("seed", range(12))
    def test_cross_matching_between_large_sets(self, seed):
        rng = random.Random(seed)
        s = rng.randint(1, 3)
        n = rng.randint(2 * s + 6, 16)
        g = complete_graph(n) if s == 1 else sample_s_connector(n, s, seed)
        for ell in (0, 1, 2):
            size = s + ell
            if 2 * size > n:
                continue
            verts = rng.sample(range(n), n)
            X = set(verts[:rng.randint(size, n - size)])
            rest = [v for v in verts if v not in X]
            Y = set(rest[:rng.randint(size, len(rest))])
            assert nu_between(g, X, Y) >= ell + 1


class TestGenerators:
    def test_odd_cycle(self):
        assert gen_odd_cycle(5).edges == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
        with pytest.raises(ValueError):
            gen_odd_cycle(6)

    def test_complete_split(self):
        g = gen_complete_split(2, 3)
        assert g.n == 5 and g.m == 1 + 6
        assert not any(g.has_edge(u, v) for u in range(2, 5) for v in range(2, 5) if u != v)

    def test_gnp_zero(self):
        assert gen_gnp(10, 0.0, 3).m == 0

    def test_gnp_deterministic(self):
        assert gen_gnp(12, 0.4, 9) == gen_gnp(12, 0.4, 9)

    def test_gnp_rejects_bad_p(self):
        with pytest.raises(ValueError):
            gen_gnp(5, 1.5, 0)

    @pytest.mark.parametrize("n,d", [(6, 3), (10, 4), (9, 2)])
    def test_regular(self, n, d):
        g = gen_random_regular(n, d, 1)
        assert all(g.degree(v) == d for v in range(n))

    def test_regular_infeasible(self):
        with pytest.raises(ValueError):
            gen_random_regular(5, 3, 0)

    @pytest.mark.parametrize("seed", range(5))
    def test_sampled_connector(self, seed):
        g = sample_s_connector(12, 2, seed)
        assert is_s_connector(g, 2).verdict and g.m < 66


class TestConstructions:
    def test_cl_extremal_22(self):
        host, cg = cl_extremal((2, 2))
        assert host == complete_graph(4)
        assert cg.layers[1] == {(0, 1), (0, 2), (1, 2)}
        assert cg.layers[2] == {(0, 3), (1, 3), (2, 3)}
        assert cg.nu_vector() == (1, 1)

    def test_cl_extremal_small(self):
        host, cg = cl_extremal((1, 1))
        assert host.n == 1 and host.m == 0
        host, cg = cl_extremal((3,))
        assert host == complete_graph(5) and cg.nu_vector() == (2,)

    @pytest.mark.parametrize("t", [t for q in (1, 2, 3) for t in product(range(1, 5), repeat=q)])
    def test_cl_extremal_refutes(self, t):
        host, cg = cl_extremal(t)
        tv = TVector(t)
        assert host.n == tv.tmax() + tv.lam()
        assert cg.is_fully_coloured() and construction_refutes(cg, tv)

    def test_sharp_examples(self):
        host, cg = sharp_construction((2, 2), 2)
        assert host.n == 5 and is_s_connector(host, 2).verdict and cg.nu_vector() == (1, 1)
        host, cg = sharp_construction((1, 1), 1)
        assert host.n == 1 and cg.nu_vector() == (0, 0)
        host, cg = sharp_construction((2,), 3)
        assert host.n == 5 and host.m == 3 and cg.nu_vector() == (1,)

    def test_split_star_q2_s2(self):
        host, cg = split_star_colouring(2, 2)
        assert host.n == 5
        # colour 1: the three spokes at vertex 0 plus the clique edge 01
        assert cg.layers[1] == {(0, 1), (0, 2), (0, 3), (0, 4)}
        assert cg.layers[2] == {(1, 2), (1, 3), (1, 4)}
        assert cg.nu_vector() == (1, 1)

    def test_split_star_more(self):
        host, cg = split_star_colouring(1, 2)
        assert host == complete_bipartite(1, 3) and cg.nu_vector() == (1,)
        host, cg = split_star_colouring(2, 3)
        assert host.n == 7 and is_s_connector(host, 3).verdict

    @pytest.mark.parametrize("q,s", [(q, s) for q in (1, 2, 3, 4) for s in (2, 3, 4)])
    def test_split_star_general(self, q, s):
        host, cg = split_star_colouring(q, s)
        assert host.n == q + 2 * s - 1 and is_s_connector(host, s).verdict
        assert all(nu <= 1 for nu in cg.nu_vector())

    def test_konig_p4(self):
        g = path_graph(4)
        cover = konig_cover(g)
        assert len(cover) == 2 and all(u in cover or v in cover for u, v in g.edges)
        cg = konig_colouring(g, (2, 2))
        assert cg.nu_vector() == (1, 1)

    def test_konig_k33(self):
        cg = konig_colouring(complete_bipartite(3, 3), (4,))
        assert cg.nu_vector() == (3,) and cg.is_fully_coloured()

    def test_konig_c6(self):
        cg = konig_colouring(cycle_graph(6), (2, 3))
        assert construction_refutes(cg, (2, 3))

    def test_konig_needs_budget(self):
        with pytest.raises(ValueError):
            konig_colouring(path_graph(4), (2, 1))

    @given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32), st.data())
    @settings(max_examples=100)
    def test_konig_random_bipartite(self, a, b, seed, data):
        rng = random.Random(seed)
        g = Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < 0.5])
        assert bipartition(g) is not None
        cover = konig_cover(g)
        assert len(cover) == matching_number(g)
        assert all(u in cover or v in cover for u, v in g.edges)
        nu = len(cover)
        q = data.draw(st.integers(1, 3))
        t = [1] * q
        for _ in range(nu):
            t[data.draw(st.integers(0, q - 1))] += 1
        cg = konig_colouring(g, t)
        assert cg.is_fully_coloured() and construction_refutes(cg, t)

    def test_gnp_adversary_triangle(self):
        g = add_isolated(complete_graph(3), 3)
        cg = gnp_adversary_colouring(g, (2, 2))
        assert cg.nu_vector() == (1, 0)

    def test_gnp_adversary_c4_p2(self):
        g = disjoint_union(cycle_graph(4), path_graph(2))
        cg = gnp_adversary_colouring(g, (3, 3))
        assert cg.layers[1] >= cycle_graph(4).edges
        assert construction_refutes(cg, (3, 3)) and cg.is_fully_coloured()

    def test_gnp_adversary_forest_is_konig(self):
        g = path_graph(5)
        cg = gnp_adversary_colouring(g, (2, 3))
        assert construction_refutes(cg, (2, 3))

    def test_gnp_adversary_inapplicable(self):
        assert gnp_adversary_colouring(complete_graph(6), (3, 2)) is None

    @pytest.mark.parametrize("seed", range(20))
    def test_gnp_adversary_random(self, seed):
        rng = random.Random(seed)
        g = gen_gnp(rng.randint(6, 30), 1.2 / 15, seed)
        nu = matching_number(g)
        t = (nu // 2 + 2, nu - nu // 2 + 1)
        cg = gnp_adversary_colouring(g, t)
        if cg is not None:
            assert cg.is_fully_coloured() and construction_refutes(cg, t)
