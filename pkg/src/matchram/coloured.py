"""Multicolourings with an uncoloured layer, their component hypergraphs, and
the rank-like function r(T) / surplus sigma(T) = r(T) - |T| together with an
exact search for a sigma-maximal set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .graph import (
    Edge,
    GEDecomposition,
    Graph,
    GraphError,
    ge_decompose,
    induced,
    matching_number,
    norm_edge,
)


class SearchGuardExceeded(RuntimeError):
    """An exponential search was asked to run beyond its configured size guard."""


@dataclass(frozen=True)
class ColouredGraph:
    """Layers ``E_0..E_q`` over a host graph; ``E_0`` holds uncoloured edges.

    An edge may sit in several colour layers.
    """

    host: Graph
    layers: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        if len(self.layers) < 1:
            raise GraphError("need at least the uncoloured layer")
        for j, layer in enumerate(self.layers):
            bad = layer - self.host.edges
            if bad:
                raise GraphError(f"layer {j} has non-host edges {sorted(bad)[:3]}")

    @property
    def q(self) -> int:
        return len(self.layers) - 1

    @property
    def n(self) -> int:
        return self.host.n

    @classmethod
    def from_layers(cls, n: int, layers: Sequence[Iterable[Sequence[int]]],
                    host: Graph | None = None) -> "ColouredGraph":
        norm = tuple(frozenset(norm_edge(int(e[0]), int(e[1])) for e in L) for L in layers)
        if host is None:
            host = Graph.from_edges(n, [e for L in norm for e in L])
        return cls(host, norm)

    @classmethod
    def from_assignment(cls, host: Graph, q: int, colour_of: Mapping[Edge, int]) -> "ColouredGraph":
        """Single colour per edge, colours in ``1..q``."""
        layers: list[set[Edge]] = [set() for _ in range(q + 1)]
        for e in host.edges:
            c = colour_of[e]
            if not 1 <= c <= q:
                raise GraphError(f"colour {c} out of range 1..{q}")
            layers[c].add(e)
        return cls(host, tuple(frozenset(L) for L in layers))

    def layer(self, j: int) -> Graph:
        return Graph(self.host.n, self.layers[j])

    def coloured_edges(self) -> frozenset[Edge]:
        return frozenset().union(*self.layers[1:]) if self.q else frozenset()

    def is_fully_coloured(self) -> bool:
        return not self.layers[0] and self.coloured_edges() == self.host.edges

    def is_proper_for(self, S: Iterable[int]) -> bool:
        E0 = self.layers[0]
        if E0 != self.host.edges_incident(S):
            return False
        return all(not (E0 & L) for L in self.layers[1:])

    def nu_vector(self) -> tuple[int, ...]:
        return tuple(matching_number(self.layer(j)) for j in range(1, self.q + 1))

    def nu_sigma(self) -> int:
        return sum(self.nu_vector())

    @cached_property
    def ge(self) -> tuple[GEDecomposition, ...]:
        """GE decomposition of each colour layer, index 0 is colour 1."""
        return tuple(ge_decompose(self.layer(j)) for j in range(1, self.q + 1))

    def is_ad_pure(self) -> bool:
        return all(not d.C for d in self.ge)

    def is_d_pure(self) -> bool:
        return all(not d.C and not d.A for d in self.ge)

    def is_acyclic(self) -> bool:
        return is_hyperforest(component_hypergraph(self))

    def is_d_acyclic(self) -> bool:
        return self.is_d_pure() and self.is_acyclic()

    def uncolour(self, S: Iterable[int]) -> "ColouredGraph":
        cut = self.host.edges_incident(S)
        layers = (self.layers[0] | cut,) + tuple(L - cut for L in self.layers[1:])
        return ColouredGraph(self.host, layers)

    def induced(self, U: Iterable[int]) -> tuple["ColouredGraph", list[int]]:
        sub, labels = induced(self.host, U)
        index = {v: i for i, v in enumerate(labels)}
        layers = tuple(
            frozenset(norm_edge(index[u], index[v]) for u, v in L if u in index and v in index)
            for L in self.layers
        )
        return ColouredGraph(sub, layers), labels

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "q": self.q,
            "layers": [[list(e) for e in sorted(L)] for L in self.layers],
        })

    @classmethod
    def from_json(cls, text: str, host: Graph | None = None) -> "ColouredGraph":
        data = json.loads(text)
        layers = data["layers"]
        if len(layers) != data["q"] + 1:
            raise GraphError(f"expected {data['q'] + 1} layers, found {len(layers)}")
        if host is not None and host.n != data["n"]:
            raise GraphError("host vertex count does not match")
        return cls.from_layers(data["n"], layers, host=host)


# ---------------------------------------------------------------------------
# Component hypergraphs


@dataclass(frozen=True)
class HyperEdge:
    vertices: frozenset[int]
    colour: int
    family: str  # "C" or "K"


@dataclass(frozen=True)
class ComponentHypergraph:
    n: int
    edges: tuple[HyperEdge, ...]

    def vertex_sets(self) -> list[frozenset[int]]:
        return [h.vertices for h in self.edges]

    def restrict(self, U: Iterable[int]) -> "ComponentHypergraph":
        U = frozenset(U)
        return ComponentHypergraph(self.n, tuple(
            HyperEdge(h.vertices & U, h.colour, h.family) for h in self.edges if h.vertices & U))


def component_hypergraph(cg: ColouredGraph) -> ComponentHypergraph:
    """Connected components with at least one edge, of every colour layer."""
    out = []
    for j in range(1, cg.q + 1):
        g = cg.layer(j)
        for comp in g.components():
            if len(comp) >= 2:
                out.append(HyperEdge(comp, j, "C"))
    return ComponentHypergraph(cg.n, tuple(out))


def k_hypergraph(cg: ColouredGraph) -> ComponentHypergraph:
    """Components of G_j[D_j] for every colour, singletons included."""
    out = []
    for j, dec in enumerate(cg.ge, start=1):
        for comp in dec.d_components:
            out.append(HyperEdge(comp, j, "K"))
    return ComponentHypergraph(cg.n, tuple(out))


def residual_k_hypergraph(cg: ColouredGraph, T: Iterable[int]) -> ComponentHypergraph:
    """Components of G_j[K - T] over the D-components K of the original
    colouring.  Equals k_hypergraph(cg.uncolour(T)) up to singletons when cg is
    AD-pure and T contains every A_j."""
    T = frozenset(T)
    out = []
    for j, dec in enumerate(cg.ge, start=1):
        layer = cg.layer(j)
        for K in dec.d_components:
            for comp in layer.components(K - T):
                out.append(HyperEdge(comp, j, "K"))
    return ComponentHypergraph(cg.n, tuple(out))


def is_hyperforest(h: ComponentHypergraph) -> bool:
    """Acyclicity of the vertex/hyperedge incidence graph via union-find."""
    parent = list(range(h.n + len(h.edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, e in enumerate(h.edges):
        node = h.n + k
        for v in sorted(e.vertices):
            a, b = find(v), find(node)
            if a == b:
                return False
            parent[a] = b
    return True


# ---------------------------------------------------------------------------
# r / sigma


@dataclass(frozen=True)
class _Comp:
    colour: int
    members: frozenset[int]
    mask: int
    nu: int
    local: Graph
    labels: tuple[int, ...]


def _mask(S: Iterable[int]) -> int:
    m = 0
    for v in S:
        m |= 1 << v
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class SigmaContext:
    """Per-colour GE data of a colouring, with cached matching numbers of
    D-component remnants.  Treat as immutable; the cache is internal."""

    def __init__(self, cg: ColouredGraph):
        self.n = cg.n
        self.q = cg.q
        self.ge = cg.ge
        self.a_masks = tuple(_mask(d.A) for d in self.ge)
        comps = []
        for j, dec in enumerate(self.ge, start=1):
            layer = cg.layer(j)
            for K in dec.d_components:
                local, labels = induced(layer, K)
                comps.append(_Comp(j, K, _mask(K), matching_number(local), local, tuple(labels)))
        self.comps: tuple[_Comp, ...] = tuple(comps)
        vcomps: list[list[int]] = [[] for _ in range(self.n)]
        for ci, c in enumerate(self.comps):
            if c.nu >= 1:
                for v in c.members:
                    vcomps[v].append(ci)
        self.vcomps = tuple(tuple(x) for x in vcomps)
        self.a_count = tuple(sum((m >> v) & 1 for m in self.a_masks) for v in range(self.n))
        self.a_all = 0
        for m in self.a_masks:
            self.a_all |= m
        self._remnant: dict[tuple[int, int], int] = {}

    @classmethod
    def from_coloured(cls, cg: ColouredGraph) -> "SigmaContext":
        return cls(cg)

    def remnant_nu(self, ci: int, tmask: int) -> int:
        """nu(G_j[K minus T]) for component ``ci``."""
        c = self.comps[ci]
        key = (ci, tmask & c.mask)
        val = self._remnant.get(key)
        if val is None:
            keep = [i for i, v in enumerate(c.labels) if not (key[1] >> v) & 1]
            sub, _ = induced(c.local, keep)
            val = matching_number(sub)
            self._remnant[key] = val
        return val

    def drop(self, ci: int, tmask: int) -> int:
        c = self.comps[ci]
        if c.nu == 0 or not (tmask & c.mask):
            return 0
        return c.nu - self.remnant_nu(ci, tmask)

    def r_mask(self, tmask: int) -> int:
        r = sum(bin(m & tmask).count("1") for m in self.a_masks)
        for ci, c in enumerate(self.comps):
            if c.nu and tmask & c.mask:
                r += c.nu - self.remnant_nu(ci, tmask)
        return r

    def sigma_mask(self, tmask: int) -> int:
        return self.r_mask(tmask) - bin(tmask).count("1")


def sigma_eval(ctx: SigmaContext, T: Iterable[int]) -> tuple[int, int]:
    """(r(T), sigma(T)) computed exactly."""
    m = _mask(T)
    r = ctx.r_mask(m)
    return r, r - bin(m).count("1")


class _Search:
    """Branch and bound over subsets of the candidate vertices.

    Adding vertex v changes r by at most a(v) + (number of non-trivial
    D-components containing v), and each component's drop is capped by its
    matching number; both give admissible upper bounds.
    """

    def __init__(self, ctx: SigmaContext, domain: list[int]):
        self.ctx = ctx
        self.domain = domain
        self.nodes = 0
        self.suffix_gain = [0] * (len(domain) + 1)
        self.suffix_mask = [0] * (len(domain) + 1)
        self.suffix_q = [1] * (len(domain) + 1)
        for i in range(len(domain) - 1, -1, -1):
            v = domain[i]
            k = len(ctx.vcomps[v]) + ctx.a_count[v]
            self.suffix_gain[i] = self.suffix_gain[i + 1] + max(0, k - 1)
            self.suffix_mask[i] = self.suffix_mask[i + 1] | (1 << v)
            self.suffix_q[i] = max(self.suffix_q[i + 1], k)

    def bound(self, i: int, tmask: int, sig: int) -> int:
        ctx = self.ctx
        ub1 = sig + self.suffix_gain[i]
        rest = self.suffix_mask[i]
        total = 0
        for ci, c in enumerate(ctx.comps):
            if not c.nu or not rest & c.mask:
                continue
            cur = ctx.drop(ci, tmask)
            reach = bin((tmask | rest) & c.mask).count("1") - 1
            total += max(0, min(c.nu, reach, cur + bin(rest & c.mask).count("1")) - cur)
        # A-vertices in the rest also gain; fold them in crudely
        total += sum(bin(m & rest).count("1") for m in ctx.a_masks)
        qmax = self.suffix_q[i]
        ub2 = sig + total - (-(-total // qmax))
        return min(ub1, ub2)

    def maximise(self, base: int) -> tuple[int, int]:
        best = [self.ctx.sigma_mask(base), base]

        def dfs(i, tmask, sig):
            self.nodes += 1
            if sig > best[0]:
                best[0], best[1] = sig, tmask
            if i == len(self.domain) or self.bound(i, tmask, sig) <= best[0]:
                return
            v = self.domain[i]
            with_v = tmask | (1 << v)
            dfs(i + 1, with_v, self.ctx.sigma_mask(with_v))
            dfs(i + 1, tmask, sig)

        dfs(0, base, best[0])
        return best[0], best[1]

    def extend(self, base: int, target: int) -> int | None:
        """Some nonempty Y in the domain (disjoint from base) with sigma(base | Y) >= target."""
        dom = [v for v in self.domain if not (base >> v) & 1]
        sub = _Search(self.ctx, dom)

        def dfs(i, tmask, sig):
            self.nodes += 1
            if tmask != base and sig >= target:
                return tmask
            if i == len(dom) or sub.bound(i, tmask, sig) < target:
                return None
            v = dom[i]
            with_v = tmask | (1 << v)
            found = dfs(i + 1, with_v, self.ctx.sigma_mask(with_v))
            if found is not None:
                return found
            return dfs(i + 1, tmask, sig)

        return dfs(0, base, self.ctx.sigma_mask(base))


def sigma_maximal(ctx: SigmaContext, guard: int = 22) -> frozenset[int]:
    """A set T maximising sigma globally, with every strict superset strictly worse.

    Vertices in some A_j are always included (adding one never lowers sigma);
    vertices lying in no A_j and no non-trivial D-component lower sigma by
    exactly one and are never included.  The remaining vertices are searched
    exactly by branch and bound; ``guard`` caps their number.
    """
    base = ctx.a_all
    domain = [v for v in range(ctx.n) if not (base >> v) & 1 and ctx.vcomps[v]]
    if len(domain) > guard:
        raise SearchGuardExceeded(
            f"sigma search over {len(domain)} free vertices exceeds guard {guard}; "
            "raise --guard-sigma to override")
    domain.sort(key=lambda v: (-len(ctx.vcomps[v]), v))
    search = _Search(ctx, domain)
    value, tmask = search.maximise(base)
    while True:
        single = next((v for v in domain if not (tmask >> v) & 1
                       and ctx.sigma_mask(tmask | (1 << v)) >= value), None)
        if single is not None:
            tmask |= 1 << single
            continue
        bigger = search.extend(tmask, value)
        if bigger is None:
            break
        tmask = bigger
    return frozenset(_bits(tmask))
