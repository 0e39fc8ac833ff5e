"""Simple graphs on dense vertex labels, maximum matchings and Gallai-Edmonds
decompositions, plus the small forest/partition helpers used by the proofs.

Vertices are the integers ``0..n-1``.  Every operation is a pure function of
its inputs; deletions and induced subgraphs return a relabelling table so
vertex sets can be mapped back into the parent graph.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertices."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {e} not normalised or out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        out = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            out.add(norm_edge(u, v))
        return cls(n, frozenset(out))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def complement(self) -> "Graph":
        return Graph(self.n, frozenset(e for e in combinations(range(self.n), 2) if e not in self.edges))

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges | frozenset(norm_edge(*e) for e in extra))

    def without_edges(self, drop: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges - frozenset(norm_edge(*e) for e in drop))

    def edges_between(self, X: Iterable[int], Y: Iterable[int]) -> frozenset[Edge]:
        """Edges with one endpoint in X and the other in Y (X, Y may overlap)."""
        X, Y = set(X), set(Y)
        return frozenset(e for e in self.edges
                         if (e[0] in X and e[1] in Y) or (e[0] in Y and e[1] in X))

    def edges_incident(self, S: Iterable[int]) -> frozenset[Edge]:
        S = set(S)
        return frozenset(e for e in self.edges if e[0] in S or e[1] in S)

    def components(self, within: Iterable[int] | None = None) -> list[frozenset[int]]:
        """Connected components of the induced subgraph on ``within`` (default V),
        ordered by smallest vertex."""
        allowed = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.sorted_edges]})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        data = json.loads(text)
        return cls.from_edges(data["n"], data["edges"])

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.sorted_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise GraphError("edge-list header must be 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise GraphError(f"header promises {m} edges, found {len(body)}")
        g = cls.from_edges(n, [(int(a), int(b)) for a, b in body])
        if g.m != m:
            raise GraphError("duplicate edges in edge list")
        return g


# ---------------------------------------------------------------------------
# Named graphs


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def add_isolated(g: Graph, k: int) -> Graph:
    return Graph(g.n + k, g.edges)


# ---------------------------------------------------------------------------
# Subgraphs


def induced(g: Graph, U: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on U, relabelled to ``0..|U|-1`` in increasing order.

    Returns the subgraph and ``labels`` with ``labels[new] == old``.
    """
    labels = sorted(set(U))
    for v in labels:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(labels)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph.from_edges(len(labels), edges), labels


def remove_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    return induced(g, (u for u in range(g.n) if u != v))


def restrict_edges(g: Graph, U: Iterable[int]) -> Graph:
    """Same vertex set, keeping only edges inside U."""
    U = set(U)
    return Graph(g.n, frozenset(e for e in g.edges if e[0] in U and e[1] in U))


# ---------------------------------------------------------------------------
# Maximum matching (Edmonds' blossom algorithm)


def _lca(match, base, parent, a, b, n):
    used = [False] * n
    while True:
        a = base[a]
        used[a] = True
        if match[a] == -1:
            break
        a = parent[match[a]]
    while True:
        b = base[b]
        if used[b]:
            return b
        b = parent[match[b]]


def _augment_from(adj, match, root, skip=()) -> bool:
    """Search for an augmenting path from the exposed vertex ``root``.

    Augments ``match`` in place and returns True on success.  Vertices in
    ``skip`` are treated as deleted.
    """
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if to in skip or base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = _lca(match, base, parent, v, to, n)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def _max_matching_array(g: Graph) -> list[int]:
    match = [-1] * g.n
    for u, v in g.sorted_edges:
        if match[u] == -1 and match[v] == -1:
            match[u], match[v] = v, u
    adj = g.adj
    for v in range(g.n):
        if match[v] == -1 and adj[v]:
            _augment_from(adj, match, v)
    return match


@dataclass(frozen=True)
class Matching:
    edges: frozenset[Edge]

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)

    def is_valid_in(self, g: Graph) -> bool:
        return self.edges <= g.edges and len(self.covered) == 2 * len(self.edges)


def max_matching(g: Graph) -> Matching:
    """A maximum matching of ``g``; deterministic for a fixed graph."""
    match = _max_matching_array(g)
    return Matching(frozenset((v, match[v]) for v in range(g.n) if match[v] > v))


@lru_cache(maxsize=1 << 16)
def matching_number(g: Graph) -> int:
    match = _max_matching_array(g)
    return sum(1 for v in range(g.n) if match[v] > v)


def _edges_nu(n: int, edges: frozenset[Edge]) -> int:
    return matching_number(Graph(n, edges))


def nu_between(g: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    """Maximum matching using only edges with one end in X and the other in Y."""
    X, Y = frozenset(X), frozenset(Y)
    if not X or not Y:
        return 0
    eligible = g.edges_between(X, Y)
    if not X & Y:
        return _bipartite_nu(X, eligible)
    return _edges_nu(g.n, eligible)


def _bipartite_nu(left: frozenset[int], edges: Iterable[Edge]) -> int:
    nb: dict[int, list[int]] = {}
    for u, v in edges:
        a, b = (u, v) if u in left else (v, u)
        nb.setdefault(a, []).append(b)
    owner: dict[int, int] = {}

    def try_assign(a, seen):
        for b in nb[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in owner or try_assign(owner[b], seen):
                owner[b] = a
                return True
        return False

    return sum(1 for a in sorted(nb) if try_assign(a, set()))


# ---------------------------------------------------------------------------
# Gallai-Edmonds


@dataclass(frozen=True)
class GEDecomposition:
    C: frozenset[int]
    A: frozenset[int]
    D: frozenset[int]
    d_components: tuple[frozenset[int], ...]

    def deficiency(self) -> int:
        return len(self.d_components) - len(self.A)


def inessential_vertices(g: Graph) -> frozenset[int]:
    """Vertices v with nu(g - v) == nu(g)."""
    match = _max_matching_array(g)
    adj = g.adj
    out = set()
    for v in range(g.n):
        u = match[v]
        if u == -1:
            out.add(v)
            continue
        trial = list(match)
        trial[v] = trial[u] = -1
        if _augment_from(adj, trial, u, skip=(v,)):
            out.add(v)
    return frozenset(out)


@lru_cache(maxsize=1 << 14)
def ge_decompose(g: Graph) -> GEDecomposition:
    D = inessential_vertices(g)
    A = frozenset(v for v in range(g.n) if v not in D and any(w in D for w in g.adj[v]))
    C = frozenset(range(g.n)) - D - A
    return GEDecomposition(C, A, D, tuple(g.components(D)))


def is_factor_critical(g: Graph) -> bool:
    if g.n % 2 == 0:
        return False
    return matching_number(g) == (g.n - 1) // 2 and len(inessential_vertices(g)) == g.n


def has_perfect_matching(g: Graph) -> bool:
    return 2 * matching_number(g) == g.n


# ---------------------------------------------------------------------------
# Weighted forests and balanced sums


@dataclass(frozen=True)
class WeightedForest:
    graph: Graph
    weights: tuple[Fraction | int, ...]

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise GraphError("one weight per vertex required")
        if any(w < 0 for w in self.weights):
            raise GraphError("weights must be non-negative")
        if not self.graph.is_forest():
            raise GraphError("underlying graph has a cycle")

    def weight(self, U: Iterable[int]) -> Fraction | int:
        return sum((self.weights[u] for u in U), 0)


def is_weighted_centroid(t: WeightedForest, v: int) -> bool:
    total = t.weight(range(t.graph.n))
    rest = [u for u in range(t.graph.n) if u != v]
    return all(2 * t.weight(S) <= total for S in t.graph.components(rest))


def weighted_centroid(t: WeightedForest) -> int:
    """Walk towards the heaviest side until every side is at most half the weight."""
    g = t.graph
    if g.n == 0:
        raise GraphError("empty forest has no centroid")
    total = t.weight(range(g.n))
    tree = max(g.components(), key=lambda S: (t.weight(S), -min(S)))
    v = min(tree)
    seen = set()
    while True:
        rest = [u for u in tree if u != v]
        sides = g.components(rest)
        heavy = max(sides, key=lambda S: (t.weight(S), -min(S)), default=None)
        if heavy is None or 2 * t.weight(heavy) <= total:
            return v
        seen.add(v)
        nxt = next(w for w in g.adj[v] if w in heavy)
        if nxt in seen:
            # walk backtracked; the lemma rules this out
            raise AssertionError("centroid walk backtracked")
        v = nxt


def balanced_subset(s: Sequence[Fraction | int | float]) -> list[int]:
    """Indices whose values sum into [total/3, 2*total/3].

    Requires every value to be at most two thirds of the total.
    """
    total = sum(s)
    if any(x <= 0 for x in s):
        raise ValueError("values must be positive")
    if any(3 * x > 2 * total for x in s):
        raise ValueError("some value exceeds two thirds of the total")
    for i, x in enumerate(s):
        if 3 * x >= total:
            return [i]
    picked, acc = [], 0
    for i, x in enumerate(s):
        picked.append(i)
        acc += x
        if 3 * acc >= total:
            return picked
    raise AssertionError("unreachable: prefix sums reach the total")
