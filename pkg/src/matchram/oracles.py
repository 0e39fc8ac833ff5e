"""Brute-force reference implementations.

Nothing here calls the blossom code or the branch-and-bound searches; these
are the independent checks the fast paths are tested against.  All of them are
exponential and meant for graphs with a handful of vertices or edges.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Sequence

from .graph import Edge, Graph


def all_matchings(edges: Sequence[Edge]) -> list[frozenset[Edge]]:
    """Every matching (including the empty one) of an edge list."""
    out: list[frozenset[Edge]] = []

    def rec(i, used, chosen):
        if i == len(edges):
            out.append(frozenset(chosen))
            return
        rec(i + 1, used, chosen)
        u, v = edges[i]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, chosen + [edges[i]])

    rec(0, frozenset(), [])
    return out


def brute_nu_edges(edges: Iterable[Edge]) -> int:
    edges = sorted(edges)
    best = 0

    def rec(i, used, size):
        nonlocal best
        if size + (len(edges) - i) <= best:
            return
        if i == len(edges):
            best = max(best, size)
            return
        u, v = edges[i]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, size + 1)
        rec(i + 1, used, size)

    rec(0, frozenset(), 0)
    return best


def brute_nu(g: Graph) -> int:
    return brute_nu_edges(g.edges)


def maximum_matchings(g: Graph) -> list[frozenset[Edge]]:
    ms = all_matchings(sorted(g.edges))
    top = max(len(m) for m in ms)
    return [m for m in ms if len(m) == top]


def brute_ge(g: Graph) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """(C, A, D) straight from the definition, enumerating maximum matchings."""
    V = frozenset(range(g.n))
    D = set()
    for m in maximum_matchings(g):
        covered = {v for e in m for v in e}
        D |= V - covered
    D = frozenset(D)
    A = frozenset(v for v in V - D if any(w in D for w in g.adj[v]))
    return V - D - A, A, D


def brute_factor_critical(g: Graph) -> bool:
    if g.n == 0:
        return False
    for v in range(g.n):
        rest = [e for e in g.edges if v not in e]
        if 2 * brute_nu_edges(rest) != g.n - 1:
            return False
    return True


def brute_s_connector(g: Graph, s: int) -> bool:
    V = range(g.n)
    for X in combinations(V, s):
        others = [v for v in V if v not in X]
        for Y in combinations(others, s):
            if not any(g.has_edge(x, y) for x in X for y in Y):
                return False
    return True


def brute_alpha_star(g: Graph) -> int:
    t = 0
    while 2 * (t + 1) <= g.n and not brute_s_connector(g, t + 1):
        t += 1
    return t


def brute_arrows(g: Graph, t: Sequence[int]) -> tuple[bool, tuple[int, ...] | None]:
    """Full enumeration of single-colour-per-edge colourings, no pruning.

    Returns (arrows, refuting colour assignment in sorted-edge order).
    """
    edges = sorted(g.edges)
    q = len(t)
    for colours in product(range(q), repeat=len(edges)):
        ok = True
        for j in range(q):
            cls = [e for e, c in zip(edges, colours) if c == j]
            if brute_nu_edges(cls) >= t[j]:
                ok = False
                break
        if ok:
            return False, colours
    return True, None


def incidence_has_cycle(n: int, hyperedges: Sequence[frozenset[int]]) -> bool:
    """Depth-first search for a cycle in the vertex/hyperedge incidence graph."""
    # nodes: ('v', i) and ('e', k)
    nbrs: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for i in range(n):
        nbrs[("v", i)] = []
    for k, S in enumerate(hyperedges):
        nbrs[("e", k)] = [("v", v) for v in S]
        for v in S:
            nbrs[("v", v)].append(("e", k))
    seen: set = set()
    for start in nbrs:
        if start in seen:
            continue
        stack = [(start, None)]
        while stack:
            node, par = stack.pop()
            if node in seen:
                return True
            seen.add(node)
            skipped_parent = False
            for w in nbrs[node]:
                if w == par and not skipped_parent:
                    skipped_parent = True
                    continue
                stack.append((w, node))
    return False
