"""The compression pipeline: CD-saturation, C-isolation, decycling and
distilling, each with its guaranteed postconditions checked at runtime.

A failed postcondition raises :class:`LemmaViolation`.  That would mean a bug
here or a false lemma, so it is never caught inside the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .coloured import (
    ColouredGraph,
    SigmaContext,
    component_hypergraph,
    is_hyperforest,
    k_hypergraph,
    sigma_maximal,
)
from .connector import is_s_connector
from .graph import (
    Graph,
    ge_decompose,
    induced,
    is_factor_critical,
    matching_number,
    nu_between,
)


class LemmaViolation(AssertionError):
    """A postcondition the pipeline guarantees did not hold."""


class PreconditionError(ValueError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise LemmaViolation(msg)


# ---------------------------------------------------------------------------
# Single-colour compressions


def cd_saturate_trace(g: Graph, host: Graph, s: int | None = None,
                      checked: bool = True) -> tuple[Graph, list[tuple[int, int]]]:
    if g.n != host.n or not g.edges <= host.edges:
        raise PreconditionError("g must be a spanning subgraph of host")
    added = []
    cur = g
    while True:
        dec = ge_decompose(cur)
        if not dec.C or not dec.D:
            break
        between = sorted(e for e in host.edges_between(dec.C, dec.D))
        if not between:
            break
        added.append(between[0])
        cur = cur.with_edges([between[0]])
    if checked:
        _require(g.edges <= cur.edges <= host.edges, "CD-saturation left the sandwich g <= g' <= host")
        dec = ge_decompose(cur)
        _require(not host.edges_between(dec.C, dec.D), "host edges remain between C' and D'")
        _require(matching_number(cur) == matching_number(g), "CD-saturation changed nu")
        _require(len(added) <= host.m - g.m, "CD-saturation ran too long")
        if s is not None:
            c = len(dec.C)
            _require(c < s or c > g.n - 2 * s,
                     f"|C'| = {c} is neither < {s} nor > {g.n - 2 * s}")
    return cur, added


def cd_saturate(g: Graph, host: Graph, s: int | None = None, checked: bool = True) -> Graph:
    """Add host edges between C and D until none remain.

    Each step adds the lexicographically smallest such edge and recomputes the
    decomposition.  With ``s`` given the host is taken to be an s-connector and
    the size dichotomy for C' is checked.
    """
    return cd_saturate_trace(g, host, s, checked)[0]


def c_isolate(g: Graph, checked: bool = True) -> Graph:
    """Delete every edge touching C."""
    dec = ge_decompose(g)
    out = g.without_edges(g.edges_incident(dec.C))
    if checked:
        _require(len(dec.C) % 2 == 0, "C has odd size")
        new = ge_decompose(out)
        _require(not new.C, "C-isolation left a non-empty C")
        _require(new.A == dec.A, "C-isolation changed A")
        _require(matching_number(out) == matching_number(g) - len(dec.C) // 2,
                 "C-isolation did not drop nu by |C|/2")
    return out


# ---------------------------------------------------------------------------
# Decycling


def decycle(cg: ColouredGraph, guard: int = 22, checked: bool = True) -> tuple[ColouredGraph, frozenset[int]]:
    """Uncolour a sigma-maximal set T."""
    if not cg.is_fully_coloured():
        raise PreconditionError("decycle needs a fully-coloured colouring")
    if not cg.is_ad_pure():
        raise PreconditionError("decycle needs an AD-pure colouring")
    ctx = SigmaContext(cg)
    T = sigma_maximal(ctx, guard=guard)
    out = cg.uncolour(T)
    if checked:
        before, after = cg.nu_vector(), out.nu_vector()
        _require(all(a <= b for a, b in zip(after, before)), "decycling raised some nu")
        _require(sum(after) <= sum(before) - len(T), "nu_sigma did not drop by |T|")
        _require(out.is_proper_for(T), "decycled colouring is not T-proper")
        _require(out.is_d_pure(), "decycled colouring is not D-pure")
        _require(is_hyperforest(k_hypergraph(out)), "decycled colouring is not D-acyclic")
    return out, T


# ---------------------------------------------------------------------------
# Distilling


@dataclass
class DistilResult:
    result: ColouredGraph
    T: frozenset[int]
    c_star: frozenset[int]
    eta: int
    kappa: int
    k_star: frozenset[int]
    k_prime: frozenset[int]
    v_star: frozenset[int]
    trace: list[dict[str, Any]] = field(default_factory=list)

    def restricted(self) -> tuple[ColouredGraph, list[int]]:
        """The output colouring induced on V* = V - T - C*."""
        cg, labels = self.result.induced(self.v_star)
        host = Graph.from_edges(cg.n, [e for L in cg.layers[1:] for e in L])
        return ColouredGraph(host, cg.layers), labels

    def trace_lines(self) -> str:
        return "".join(json.dumps(ev, sort_keys=True) + "\n" for ev in self.trace)


def _event(stage: str, colour: int | None, detail: Any) -> dict[str, Any]:
    return {"stage": stage, "colour": colour, "detail": detail}


def _largest_component(cg: ColouredGraph, labels: list[int]) -> tuple[frozenset[int], int] | None:
    best = None
    for h in component_hypergraph(cg).edges:
        key = (-len(h.vertices), h.colour, min(h.vertices))
        if best is None or key < best[0]:
            best = (key, h)
    if best is None:
        return None
    h = best[1]
    return frozenset(labels[v] for v in h.vertices), h.colour


def distil(cg: ColouredGraph, s: int, checked: bool = True, guard: int = 22,
           check_connector: bool | None = None) -> DistilResult:
    """Run the whole pipeline on a fully-coloured colouring of an s-connector.

    Requires nu(G_j) <= |V|/2 - s for every colour.  The host connector
    property is verified when ``check_connector`` is true (default: follows
    ``checked``).
    """
    host = cg.host
    n, q = host.n, cg.q
    if s < 1:
        raise PreconditionError("s must be positive")
    if not cg.is_fully_coloured():
        raise PreconditionError("distil needs a fully-coloured colouring")
    nu0 = cg.nu_vector()
    for j, nu in enumerate(nu0, start=1):
        if 2 * nu > n - 2 * s:
            raise PreconditionError(f"nu(G_{j}) = {nu} exceeds |V|/2 - s = {n / 2 - s}")
    if check_connector is None:
        check_connector = checked
    if check_connector and not is_s_connector(host, s).verdict:
        raise PreconditionError(f"host is not an {s}-connector")

    trace = [_event("input", None, {"n": n, "q": q, "s": s, "nu": list(nu0)})]
    c_star: set[int] = set()
    iso_layers = []
    for j in range(1, q + 1):
        sat, added = cd_saturate_trace(cg.layer(j), host, s, checked)
        trace.append(_event("cd_saturate", j, {"added": [list(e) for e in added]}))
        dec = ge_decompose(sat)
        c_star |= dec.C
        iso = c_isolate(sat, checked)
        removed = sorted(sat.edges - iso.edges)
        trace.append(_event("c_isolate", j, {"C": sorted(dec.C), "removed": [list(e) for e in removed]}))
        iso_layers.append(iso.edges)
    if checked:
        _require(len(c_star) <= q * (s - 1), f"|C*| = {len(c_star)} exceeds q(s-1)")

    under = Graph(n, frozenset().union(*iso_layers))
    circ = ColouredGraph(under, (frozenset(),) + tuple(iso_layers))
    out, T = decycle(circ, guard=guard, checked=checked)
    trace.append(_event("decycle", None, {"T": sorted(T)}))

    v_star = frozenset(range(n)) - T - c_star
    sub, labels = out.induced(v_star)
    if checked:
        _require(sub.host.edges == induced(host, v_star)[0].edges,
                 "edges of G inside V* were lost")
        _require(not sub.layers[0], "restriction to V* is not fully coloured")
    found = _largest_component(sub, labels)
    if found is not None:
        k_star, eta = found
    elif v_star:
        k_star, eta = frozenset([min(v_star)]), 1
    else:
        k_star, eta = frozenset(), 1
    if k_star:
        layer = out.layer(eta)
        k_prime = next(S for S in layer.components() if min(k_star) in S)
        if checked:
            _require(k_star <= k_prime, "K* is not inside a single component")
            _require(is_factor_critical(induced(layer, k_prime)[0]), "K' is not factor-critical")
        kappa = (len(k_prime) - 1) // 2
    else:
        k_prime, kappa = frozenset(), 0
    trace.append(_event("dominant", eta, {"K_star": sorted(k_star), "K_prime": sorted(k_prime),
                                          "kappa": kappa, "C_star": sorted(c_star)}))

    if checked:
        nu1 = out.nu_vector()
        _require(2 * kappa >= n - len(T) - (q + 13) * (s - 1) - 1,
                 f"kappa = {kappa} below (|V| - |T| - (q+13)(s-1) - 1)/2")
        _require(all(a >= b for a, b in zip(nu0, nu1)), "nu(G) >= nu(G') fails")
        _require(nu1[eta - 1] >= kappa, "nu(G'_eta) < kappa")
        _require(sum(nu0) >= sum(nu1) + len(T) >= kappa + len(T), "nu_sigma chain fails")
    return DistilResult(out, T, frozenset(c_star), eta, kappa, k_star, k_prime, v_star, trace)


# ---------------------------------------------------------------------------
# Structure of acyclic colourings


@dataclass
class SmallComponentsReport:
    s: int
    largest: frozenset[int]
    outside: int
    bound: int
    large_edges: int
    pair_violations: list[tuple[int, int, str]]

    @property
    def ok(self) -> bool:
        return self.outside <= self.bound and self.large_edges <= 1 and not self.pair_violations


def check_small_components(cg: ColouredGraph, s: int, checked: bool = True,
                           check_connector: bool | None = None) -> SmallComponentsReport:
    """Largest monochromatic component covers all but 13(s-1) vertices; at most
    one component exceeds s+1 vertices; components pairwise share at most one
    vertex and admit at most a single edge of cross matching."""
    if not cg.is_fully_coloured():
        raise PreconditionError("colouring must be fully coloured")
    hyper = component_hypergraph(cg)
    if not is_hyperforest(hyper):
        raise PreconditionError("colouring must be acyclic")
    if check_connector is None:
        check_connector = checked
    if check_connector and not is_s_connector(cg.host, s).verdict:
        raise PreconditionError(f"host is not an {s}-connector")
    found = _largest_component(cg, list(range(cg.n)))
    if found is not None:
        largest = found[0]
    else:
        largest = frozenset([0]) if cg.n else frozenset()
    sets = hyper.vertex_sets()
    violations = []
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if len(sets[a] & sets[b]) > 1:
                violations.append((a, b, "intersection"))
            elif nu_between(cg.host, sets[a], sets[b]) > 1:
                violations.append((a, b, "cross-matching"))
    rep = SmallComponentsReport(
        s=s,
        largest=largest,
        outside=cg.n - len(largest),
        bound=13 * (s - 1),
        large_edges=sum(1 for S in sets if len(S) > s + 1),
        pair_violations=violations,
    )
    if checked and not rep.ok:
        raise LemmaViolation(f"small-components structure fails: {rep}")
    return rep


def write_trace(result: DistilResult, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(result.trace_lines())

