"""s-connector checks, bipartite holes, graph generators, and the explicit
colourings that witness non-arrowing."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .coloured import ColouredGraph, SearchGuardExceeded
from .graph import (
    Edge,
    Graph,
    GraphError,
    add_isolated,
    complete_graph,
    cycle_graph,
    induced,
    matching_number,
    norm_edge,
)


@dataclass(frozen=True)
class TVector:
    t: tuple[int, ...]

    def __post_init__(self):
        if not self.t:
            raise ValueError("t needs at least one colour")
        if any(x < 1 for x in self.t):
            raise ValueError(f"entries of t must be positive, got {self.t}")

    @classmethod
    def of(cls, *entries: int) -> "TVector":
        return cls(tuple(int(x) for x in entries))

    @classmethod
    def parse(cls, text: str) -> "TVector":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()))

    @property
    def q(self) -> int:
        return len(self.t)

    def lam(self) -> int:
        return sum(x - 1 for x in self.t)

    def tmax(self) -> int:
        return max(self.t)

    def __getitem__(self, j: int) -> int:
        return self.t[j]

    def __iter__(self):
        return iter(self.t)

    def __str__(self) -> str:
        return ",".join(map(str, self.t))


def as_tvector(t: TVector | Sequence[int]) -> TVector:
    return t if isinstance(t, TVector) else TVector(tuple(t))


@dataclass(frozen=True)
class ConnectorCertificate:
    s: int
    verdict: bool
    witness: tuple[frozenset[int], frozenset[int]] | None = None

    def __bool__(self) -> bool:
        return self.verdict


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _lowest_bits(mask: int, k: int) -> frozenset[int]:
    out = []
    while mask and len(out) < k:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def is_s_connector(g: Graph, s: int, guard_n: int = 32, guard_s: int = 5) -> ConnectorCertificate:
    """Exact check that every two disjoint s-sets are joined by an edge.

    For each s-set X the vertices outside X with no neighbour in X form its
    common non-neighbourhood; a witness exists iff one of those has size >= s.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if 2 * s > g.n:
        return ConnectorCertificate(s, True)
    if g.n > guard_n or s > guard_s:
        raise SearchGuardExceeded(
            f"connector check with n={g.n}, s={s} exceeds guard (n<={guard_n}, s<={guard_s}); "
            "raise --guard-n to override")
    full = (1 << g.n) - 1
    adj = g.adj_mask
    for X in combinations(range(g.n), s):
        xmask = 0
        seen = 0
        for x in X:
            xmask |= 1 << x
            seen |= adj[x]
        free = full & ~seen & ~xmask
        if _popcount(free) >= s:
            return ConnectorCertificate(s, False, (frozenset(X), _lowest_bits(free, s)))
    return ConnectorCertificate(s, True)


def alpha_star(g: Graph, guard_n: int = 18) -> int:
    """Largest t with a (t, t) bipartite hole, i.e. K_{t,t} in the complement."""
    if g.n > guard_n:
        raise SearchGuardExceeded(f"alpha_star with n={g.n} exceeds guard {guard_n}")
    t = 0
    while 2 * (t + 1) <= g.n and not is_s_connector(g, t + 1, guard_n=guard_n, guard_s=g.n).verdict:
        t += 1
    return t


# ---------------------------------------------------------------------------
# Generators


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"infeasible G(n,p) parameters n={n}, p={p}")
    rng = random.Random(seed)
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))


def gen_random_regular(n: int, d: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Pairing model with rejection of loops and repeated pairs."""
    if n < 0 or d < 0 or d >= max(n, 1) or (n * d) % 2:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = norm_edge(u, v)
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, frozenset(edges))
    raise RuntimeError(f"pairing model failed {max_tries} times for n={n}, d={d}")


def gen_complete_split(clique_size: int, independent_size: int) -> Graph:
    """Clique on 0..c-1 joined completely to an independent set c..c+i-1."""
    if clique_size < 0 or independent_size < 0:
        raise ValueError("sizes must be non-negative")
    c = clique_size
    edges = list(combinations(range(c), 2))
    edges += [(u, c + w) for u in range(c) for w in range(independent_size)]
    return Graph.from_edges(c + independent_size, edges)


def gen_odd_cycle(length: int) -> Graph:
    if length < 3 or length % 2 == 0:
        raise ValueError("odd cycle length must be odd and at least 3")
    return cycle_graph(length)


def sample_s_connector(n: int, s: int, seed: int, holes: int | None = None) -> Graph:
    """Random s-connector: delete random edges from K_n while the result stays
    an s-connector, stopping after ``holes`` successful deletions (default: as
    many as possible in one random pass)."""
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    edges = set(pairs)
    removed = 0
    for e in pairs:
        if holes is not None and removed >= holes:
            break
        edges.discard(e)
        if is_s_connector(Graph(n, frozenset(edges)), s).verdict:
            removed += 1
        else:
            edges.add(e)
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# Explicit colourings


def _single_colour(host: Graph, q: int, colour_of: dict[Edge, int]) -> ColouredGraph:
    return ColouredGraph.from_assignment(host, q, colour_of)


def cl_extremal(t: TVector | Sequence[int]) -> tuple[Graph, ColouredGraph]:
    """K_n with n = max(t) + Lambda_t and a colouring whose colour-j matchings
    have size at most t_j - 1.

    The largest colour owns a clique of 2*t_1 - 1 vertices; every other colour
    j owns a block of t_j - 1 vertices and takes all edges at that block not
    already taken by an earlier block.
    """
    t = as_tvector(t)
    order = sorted(range(t.q), key=lambda j: -t[j])
    sizes = [2 * t[order[0]] - 1] + [t[j] - 1 for j in order[1:]]
    owner: list[int] = []
    for pos, size in enumerate(sizes):
        owner += [pos] * size
    n = len(owner)
    host = complete_graph(n)
    colour_of = {}
    for u, v in host.edges:
        colour_of[(u, v)] = order[max(owner[u], owner[v])] + 1
    return host, _single_colour(host, t.q, colour_of)


def sharp_construction(t: TVector | Sequence[int], s: int) -> tuple[Graph, ColouredGraph]:
    """The extremal colouring padded with s - 1 isolated vertices."""
    if s < 1:
        raise ValueError("s must be positive")
    _, cg = cl_extremal(t)
    host = add_isolated(cg.host, s - 1)
    return host, ColouredGraph(host, cg.layers)


def split_star_colouring(q: int, s: int) -> tuple[Graph, ColouredGraph]:
    """Complete split graph (clique of q, independent set of 2s - 1), each edge
    coloured by its smallest clique endpoint; every colour class is a star."""
    if q < 1 or s < 2:
        raise ValueError("need q >= 1 and s >= 2")
    host = gen_complete_split(q, 2 * s - 1)
    colour_of = {e: min(e) + 1 for e in host.edges}
    return host, _single_colour(host, q, colour_of)


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    left = frozenset(v for v in range(g.n) if side[v] == 0)
    return left, frozenset(range(g.n)) - left


def konig_cover(g: Graph) -> frozenset[int]:
    """Minimum vertex cover of a bipartite graph from a maximum matching."""
    parts = bipartition(g)
    if parts is None:
        raise GraphError("graph is not bipartite")
    left, right = parts
    mate: dict[int, int] = {}

    def try_assign(a, seen):
        for b in g.adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in mate or try_assign(mate[b], seen):
                mate[b] = a
                mate[a] = b
                return True
        return False

    for a in sorted(left):
        try_assign(a, set())
    # alternating reachability from exposed left vertices
    reached = set(a for a in left if a not in mate)
    queue = deque(reached)
    while queue:
        a = queue.popleft()
        for b in g.adj[a]:
            if b not in reached and mate.get(a) != b:
                reached.add(b)
                if b in mate and mate[b] not in reached:
                    reached.add(mate[b])
                    queue.append(mate[b])
    return frozenset((left - reached) | (right & reached))


def konig_colouring(g: Graph, t: TVector | Sequence[int]) -> ColouredGraph:
    """Colour a bipartite graph so that colour j has a vertex cover of size < t_j."""
    t = as_tvector(t)
    cover = sorted(konig_cover(g))
    if t.lam() < len(cover):
        raise ValueError(f"Lambda_t = {t.lam()} is below nu = {len(cover)}")
    block = {}
    it = iter(cover)
    for j in range(t.q):
        for _ in range(t[j] - 1):
            v = next(it, None)
            if v is None:
                break
            block[v] = j + 1
    colour_of = {}
    for u, v in g.edges:
        colour_of[(u, v)] = min(block.get(u, t.q + 1), block.get(v, t.q + 1))
    return _single_colour(g, t.q, colour_of)


def gnp_adversary_colouring(g: Graph, t: TVector | Sequence[int]) -> ColouredGraph | None:
    """Largest component plus the other cyclic components in the heaviest
    colour, the remaining forest by the cover colouring with reduced budget.

    Returns None when the first part already has too large a matching.
    """
    t = as_tvector(t)
    nu_g = matching_number(g)
    if t.lam() < nu_g:
        raise ValueError(f"Lambda_t = {t.lam()} is below nu = {nu_g}")
    comps = g.components()
    big = max(comps, key=lambda S: (len(S), -min(S)))
    heavy = set(big)
    for S in comps:
        if S is big:
            continue
        sub, _ = induced(g, S)
        if sub.m >= sub.n:
            heavy |= S
    dense = frozenset(e for e in g.edges if e[0] in heavy)
    nu1 = matching_number(Graph(g.n, dense))
    j = max(range(t.q), key=lambda i: (t[i], -i))
    if nu1 >= t[j]:
        return None
    reduced = list(t.t)
    reduced[j] -= nu1
    forest = Graph(g.n, g.edges - dense)
    rest = konig_colouring(forest, reduced)
    layers = [set(L) for L in rest.layers]
    layers[j + 1] |= dense
    return ColouredGraph(g, tuple(frozenset(L) for L in layers))


def construction_refutes(cg: ColouredGraph, t: TVector | Sequence[int]) -> bool:
    """Every colour-j matching is smaller than t_j."""
    t = as_tvector(t)
    return all(nu < tj for nu, tj in zip(cg.nu_vector(), t))
