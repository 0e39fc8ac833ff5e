"""Randomised verification suites.  Each suite builds valid instances from a
fixed seed, runs an operation in checked mode and re-checks its guarantees
independently, collecting failures instead of stopping at the first one."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable

from . import oracles
from .coloured import (
    ColouredGraph,
    SigmaContext,
    component_hypergraph,
    is_hyperforest,
    k_hypergraph,
    residual_k_hypergraph,
    sigma_maximal,
)
from .compression import (
    LemmaViolation,
    c_isolate,
    cd_saturate,
    check_small_components,
    decycle,
    distil,
)
from .connector import (
    TVector,
    cl_extremal,
    construction_refutes,
    gen_gnp,
    gen_odd_cycle,
    is_s_connector,
    konig_colouring,
    sample_s_connector,
    sharp_construction,
)
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    ge_decompose,
    induced,
    is_factor_critical,
    matching_number,
    max_matching,
    path_graph,
    remove_vertex,
)
from .ramsey import arrows, block_colouring, random_colouring, rho, theorem_bound, verify_theorem_main


@dataclass
class SuiteResult:
    name: str
    claim: str
    instances: int = 0
    seed: int | None = None
    failures: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "claim": self.claim,
            "instances": self.instances,
            "seed": self.seed,
            "passed": self.passed,
            "failures": self.failures[:20],
            "details": self.details,
        }


def random_graph(rng: random.Random, n: int) -> Graph:
    return gen_gnp(n, rng.random(), rng.randrange(2**32))


def random_colouring_of(host: Graph, q: int, rng: random.Random) -> ColouredGraph:
    return random_colouring(host, q, rng)


# ---------------------------------------------------------------------------
# Gallai-Edmonds


def _random_max_matching(g: Graph, rng: random.Random):
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    inv = {p: i for i, p in enumerate(perm)}
    return {tuple(sorted((inv[u], inv[v]))) for u, v in max_matching(h).edges}


def check_ge_structure(g: Graph, rng: random.Random, matchings: int = 100) -> list[str]:
    errs = []
    dec = ge_decompose(g)
    nu = matching_number(g)
    if g.n - 2 * nu != len(dec.d_components) - len(dec.A):
        errs.append("deficiency identity")
    for K in dec.d_components:
        if not is_factor_critical(induced(g, K)[0]):
            errs.append(f"D-component {sorted(K)} not factor-critical")
    comp_of = {v: i for i, K in enumerate(dec.d_components) for v in K}
    for _ in range(matchings):
        M = _random_max_matching(g, rng)
        partner = {}
        for u, v in M:
            partner[u], partner[v] = v, u
        if any(c not in partner or partner[c] not in dec.C for c in dec.C):
            errs.append("C not perfectly matched inside C")
            break
        for K in dec.d_components:
            inside = sum(1 for u, v in M if u in K and v in K)
            if inside != (len(K) - 1) // 2:
                errs.append(f"D-component {sorted(K)} not near-perfectly matched")
                break
        targets = [comp_of.get(partner.get(a, -1)) for a in dec.A]
        if None in targets or len(set(targets)) != len(targets):
            errs.append("A not matched into distinct D-components")
            break
    for v in sorted(dec.A):
        sub, labels = remove_vertex(g, v)
        d2 = ge_decompose(sub)
        back = lambda S: frozenset(labels[x] for x in S)
        if (back(d2.C), back(d2.A), back(d2.D)) != (dec.C, dec.A - {v}, dec.D):
            errs.append(f"stability fails at {v}")
    return errs


def suite_ge(trials: int = 500, seed: int = 0, max_n: int = 8, matchings: int = 100) -> SuiteResult:
    res = SuiteResult("ge", "GE deficiency identity, structure theorem and stability", seed=seed)
    rng = random.Random(seed)
    for n in range(1, max_n + 1):
        for _ in range(trials):
            g = random_graph(rng, n)
            res.instances += 1
            for e in check_ge_structure(g, rng, matchings):
                res.fail(f"{g.to_json()}: {e}")
    return res


def suite_matching(trials: int = 300, seed: int = 0, max_n: int = 10) -> SuiteResult:
    res = SuiteResult("matching", "blossom matching number equals brute force", seed=seed)
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_graph(rng, rng.randint(0, max_n))
        res.instances += 1
        M = max_matching(g)
        if not M.is_valid_in(g) or len(M) != oracles.brute_nu(g):
            res.fail(g.to_json())
        if is_factor_critical(g) != oracles.brute_factor_critical(g):
            res.fail(f"factor-critical mismatch {g.to_json()}")
    return res


# ---------------------------------------------------------------------------
# Single-colour compressions


def _spanning_subgraph(host: Graph, rng: random.Random) -> Graph:
    keep = rng.random()
    return Graph(host.n, frozenset(e for e in host.edges if rng.random() < keep))


def suite_cd(trials: int = 200, seed: int = 0, max_n: int = 12) -> SuiteResult:
    res = SuiteResult("cd", "CD-saturation keeps nu and leaves |C'| < s or > |V| - 2s", seed=seed)
    rng = random.Random(seed)
    while res.instances < trials:
        n = rng.randint(2, max_n)
        s = rng.randint(1, 3)
        host = complete_graph(n) if s == 1 else sample_s_connector(n, s, rng.randrange(2**32))
        g = _spanning_subgraph(host, rng)
        res.instances += 1
        try:
            out = cd_saturate(g, host, s=s)
        except LemmaViolation as exc:
            res.fail(f"{g.to_json()} in {host.to_json()}: {exc}")
            continue
        C = ge_decompose(out).C
        if matching_number(out) != matching_number(g) or not (len(C) < s or len(C) > n - 2 * s):
            res.fail(f"recheck failed for {g.to_json()}")
    return res


def suite_cisolate(trials: int = 200, seed: int = 0, max_n: int = 12) -> SuiteResult:
    res = SuiteResult("cisolate", "C-isolation gives C' empty, A' = A, nu drop |C|/2", seed=seed)
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_graph(rng, rng.randint(1, max_n))
        res.instances += 1
        before = ge_decompose(g)
        try:
            out = c_isolate(g)
        except LemmaViolation as exc:
            res.fail(f"{g.to_json()}: {exc}")
            continue
        after = ge_decompose(out)
        if after.C or after.A != before.A or \
                matching_number(out) != matching_number(g) - len(before.C) // 2:
            res.fail(f"recheck failed for {g.to_json()}")
    return res


# ---------------------------------------------------------------------------
# sigma-maximal sets and decycling


def _ad_pure_colouring(rng: random.Random, n: int, q: int) -> ColouredGraph:
    host = random_graph(rng, n)
    cg = random_colouring_of(host, q, rng)
    layers = [c_isolate(cg.layer(j), checked=False).edges for j in range(1, q + 1)]
    under = Graph(n, frozenset().union(*layers))
    return ColouredGraph(under, (frozenset(),) + tuple(layers))


def check_sigma_output(cg: ColouredGraph, T: frozenset[int], exhaustive: bool = False) -> list[str]:
    errs = []
    ctx = SigmaContext(cg)
    tmask = sum(1 << v for v in T)
    sig = ctx.sigma_mask(tmask)
    for j, dec in enumerate(cg.ge, start=1):
        if not dec.A <= T:
            errs.append(f"A_{j} not inside T")
        layer = cg.layer(j)
        for K in dec.d_components:
            rest = K - T
            for comp in layer.components(rest):
                if not is_factor_critical(induced(layer, comp)[0]):
                    errs.append(f"residual component {sorted(comp)} of colour {j} not factor-critical")
    if not is_hyperforest(residual_k_hypergraph(cg, T)):
        errs.append("residual D-components form a cycle")
    # recomputing GE after uncolouring only matches the residual family when C_j is empty
    if cg.is_ad_pure() and not is_hyperforest(k_hypergraph(cg.uncolour(T))):
        errs.append("K-hypergraph of the uncoloured colouring has a cycle")
    if sig < 0:
        errs.append("sigma(T) < 0")
    for v in range(cg.n):
        if v not in T and ctx.sigma_mask(tmask | (1 << v)) >= sig:
            errs.append(f"adding {v} does not lower sigma")
    if exhaustive:
        full = 1 << cg.n
        for m in range(full):
            val = ctx.sigma_mask(m)
            if val > sig:
                errs.append(f"sigma({m:b}) = {val} beats sigma(T) = {sig}")
                break
            if m != tmask and m & tmask == tmask and val >= sig:
                errs.append(f"superset {m:b} ties sigma(T)")
                break
    return errs


def suite_sigma(trials: int = 200, seed: int = 0, max_n: int = 12, max_q: int = 3,
                exhaustive_n: int = 10) -> SuiteResult:
    res = SuiteResult("sigma", "sigma-maximal sets contain every A_j, leave factor-critical "
                      "remnants and a K-hyperforest", seed=seed)
    rng = random.Random(seed)
    for i in range(trials):
        n, q = rng.randint(1, max_n), rng.randint(1, max_q)
        cg = _ad_pure_colouring(rng, n, q) if i % 2 else random_colouring_of(random_graph(rng, n), q, rng)
        res.instances += 1
        T = sigma_maximal(SigmaContext(cg))
        for e in check_sigma_output(cg, T, exhaustive=n <= exhaustive_n):
            res.fail(f"{cg.to_json()}: {e}")
    return res


def suite_decycle(trials: int = 200, seed: int = 0, max_n: int = 12, max_q: int = 3) -> SuiteResult:
    res = SuiteResult("decycle", "decycling: nu monotone, nu_sigma drops by |T|, T-proper D-acyclic",
                      seed=seed)
    rng = random.Random(seed)
    for _ in range(trials):
        cg = _ad_pure_colouring(rng, rng.randint(1, max_n), rng.randint(1, max_q))
        res.instances += 1
        try:
            out, T = decycle(cg)
        except LemmaViolation as exc:
            res.fail(f"{cg.to_json()}: {exc}")
            continue
        before, after = cg.nu_vector(), out.nu_vector()
        if any(a > b for a, b in zip(after, before)) or sum(after) > sum(before) - len(T) \
                or not out.is_proper_for(T) or not out.is_d_acyclic():
            res.fail(f"recheck failed for {cg.to_json()}")
    return res


# ---------------------------------------------------------------------------
# Distilling and the structure of acyclic colourings


def distil_instance(rng: random.Random, n: int, s: int, q: int, tries: int = 200) -> ColouredGraph | None:
    """A fully-coloured colouring of a random s-connector meeting nu(G_j) <= n/2 - s."""
    host = complete_graph(n) if s == 1 else sample_s_connector(n, s, rng.randrange(2**32))
    for k in range(tries):
        if k % 3 == 0:
            cg = random_colouring_of(host, q, rng)
        else:
            t = TVector(tuple(rng.randint(1, max(1, n // 2)) for _ in range(q)))
            cg = block_colouring(host, t, rng, noise=rng.choice((0.0, 0.05, 0.2)))
        if all(2 * nu <= n - 2 * s for nu in cg.nu_vector()):
            return cg
    return None


def check_distil_output(cg: ColouredGraph, s: int, res) -> list[str]:
    errs = []
    n, q = cg.n, cg.q
    T = res.T
    nu0, nu1 = cg.nu_vector(), res.result.nu_vector()
    if 2 * res.kappa < n - len(T) - (q + 13) * (s - 1) - 1:
        errs.append("kappa bound")
    if any(a < b for a, b in zip(nu0, nu1)) or nu1[res.eta - 1] < res.kappa:
        errs.append("nu(G) >= nu(G') >= kappa e_eta")
    if not sum(nu0) >= sum(nu1) + len(T) >= res.kappa + len(T):
        errs.append("nu_sigma chain")
    sub, _ = res.restricted()
    if not sub.is_fully_coloured() or not sub.is_acyclic():
        errs.append("restriction to V* is not a fully-coloured acyclic colouring")
    if sub.n >= 2 and not is_s_connector(sub.host, s).verdict:
        errs.append("restriction to V* is not on an s-connector")
    return errs


def suite_distil(trials: int = 200, seed: int = 0, max_n: int = 12, max_q: int = 3) -> SuiteResult:
    res = SuiteResult("distil", "distilling: kappa bound, nu(G) >= nu(G') >= kappa e_eta, "
                      "nu_sigma(G) >= nu_sigma(G') + |T| >= kappa + |T|", seed=seed)
    rng = random.Random(seed)
    attempts = 0
    while res.instances < trials:
        attempts += 1
        if attempts > 50 * trials:
            res.fail(f"only {res.instances} valid instances in {attempts - 1} attempts")
            break
        n, s, q = rng.randint(2, max_n), rng.randint(1, 3), rng.randint(1, max_q)
        cg = distil_instance(rng, n, s, q)
        if cg is None:
            continue
        res.instances += 1
        try:
            out = distil(cg, s)
        except LemmaViolation as exc:
            res.fail(f"{cg.to_json()} s={s}: {exc}")
            continue
        for e in check_distil_output(cg, s, out):
            res.fail(f"{cg.to_json()} s={s}: {e}")
    return res


def suite_structure(trials: int = 200, seed: int = 0, max_n: int = 20, s_values=(1, 2, 3),
                    max_q: int = 3) -> SuiteResult:
    res = SuiteResult("structure", "acyclic colourings of s-connectors: pairwise |K1 & K2| <= 1, "
                      "nu(K1, K2) <= 1, one large component, |V - K| <= 13(s-1)", seed=seed)
    rng = random.Random(seed)
    worst = {s: 0 for s in s_values}
    attempts = 0
    while res.instances < trials:
        attempts += 1
        if attempts > 50 * trials:
            res.fail(f"only {res.instances} valid instances in {attempts - 1} attempts")
            break
        s = s_values[res.instances % len(s_values)]
        n = rng.randint(max(2, 2 * s + 2), max_n)
        q = rng.randint(1, max_q)
        cg = distil_instance(rng, n, s, q)
        if cg is None:
            continue
        out = distil(cg, s)
        sub, _ = out.restricted()
        if sub.n < 2:
            continue
        res.instances += 1
        try:
            rep = check_small_components(sub, s)
        except LemmaViolation as exc:
            res.fail(f"{cg.to_json()} s={s}: {exc}")
            continue
        worst[s] = max(worst[s], rep.outside)
    res.details["max_outside_by_s"] = {str(k): v for k, v in worst.items()}
    return res


# ---------------------------------------------------------------------------
# Constructions and Ramsey results


def suite_sharp(seed: int = 0, max_q: int = 2, max_s: int = 4, max_t: int = 3) -> SuiteResult:
    res = SuiteResult("sharp", "padded extremal colouring: s-connector of order "
                      "max(t) + Lambda_t + s - 1 with every nu(G_j) < t_j", seed=seed)
    for q in range(1, max_q + 1):
        for t in product(range(1, max_t + 1), repeat=q):
            tv = TVector(t)
            for s in range(1, max_s + 1):
                host, cg = sharp_construction(tv, s)
                res.instances += 1
                if host.n != tv.tmax() + tv.lam() + s - 1:
                    res.fail(f"t={t} s={s}: order {host.n}")
                if not is_s_connector(host, s).verdict:
                    res.fail(f"t={t} s={s}: not an s-connector")
                if not construction_refutes(cg, tv):
                    res.fail(f"t={t} s={s}: colouring does not refute")
    return res


def cl_table(q: int = 2, max_r: int = 7, guard_edges: int = 28) -> list[dict[str, Any]]:
    rows = []
    for t in product(range(1, max_r + 1), repeat=q):
        tv = TVector(t)
        n = theorem_bound(tv, 1)
        if n > max_r:
            continue
        top = arrows(complete_graph(n), tv, guard_edges)
        below = arrows(complete_graph(n - 1), tv, guard_edges)
        _, ext = cl_extremal(tv)
        rows.append({
            "t": list(t), "n": n,
            "arrows_n": top.arrows, "arrows_n_minus_1": below.arrows,
            "extremal_refutes": construction_refutes(ext, tv) and ext.n == n - 1,
            "nodes": top.nodes_explored + below.nodes_explored,
        })
    return rows


def suite_cl(q: int = 2, max_r: int = 7, seed: int = 0) -> SuiteResult:
    res = SuiteResult("cl", "K_n arrows t K2 exactly from n = max(t) + Lambda_t + 1", seed=seed)
    rows = cl_table(q, max_r)
    res.details["table"] = rows
    for row in rows:
        res.instances += 1
        if not (row["arrows_n"] and not row["arrows_n_minus_1"] and row["extremal_refutes"]):
            res.fail(f"t={row['t']}: {row}")
    return res


def suite_discussion(seed: int = 0) -> SuiteResult:
    res = SuiteResult("discussion", "triangle and bipartite graphs have rho = 1, odd cycles beat "
                      "the pigeonhole bound", seed=seed)
    checks: list[tuple[str, Callable[[], bool]]] = [
        ("rho(K3, 2) = 1", lambda: rho(complete_graph(3), 2).value == 1),
        ("rho(P4, 2) = 1", lambda: rho(path_graph(4), 2).value == 1),
        ("rho(C6, 2) = 1", lambda: rho(cycle_graph(6), 2).value == 1),
        ("C5 arrows (2,2)", lambda: arrows(gen_odd_cycle(5), (2, 2)).arrows),
        ("C7 arrows (2,3)", lambda: arrows(gen_odd_cycle(7), (2, 3)).arrows),
        ("rho(C5, 2) >= 3/2", lambda: rho(gen_odd_cycle(5), 2).value >= Fraction(3, 2)),
    ]
    for ell in (5, 7, 9):
        k = (ell - 1) // 2
        t = (k // 2 + 1, -(-k // 2) + 1)
        checks.append((f"C{ell} arrows {t}", lambda ell=ell, t=t: arrows(gen_odd_cycle(ell), t).arrows))
    for g, name in ((path_graph(4), "P4"), (cycle_graph(6), "C6")):
        nu = matching_number(g)
        for t in product(range(1, nu + 2), repeat=2):
            tv = TVector(t)
            if tv.lam() >= nu:
                checks.append((f"König colouring refutes {name} at {t}",
                               lambda g=g, tv=tv: construction_refutes(konig_colouring(g, tv), tv)))
    for label, fn in checks:
        res.instances += 1
        if not fn():
            res.fail(label)
    return res


def suite_oracle(trials: int = 100, seed: int = 0, max_edges: int = 12) -> SuiteResult:
    res = SuiteResult("oracle", "branch-and-bound arrows equals naive enumeration", seed=seed)
    rng = random.Random(seed)
    sizes = {}
    while res.instances < trials:
        m = rng.randint(1, max_edges)
        n = rng.randint(next(k for k in range(2, 20) if k * (k - 1) // 2 >= m), 9)
        g = Graph.from_edges(n, rng.sample(list(combinations(range(n), 2)), m))
        sizes[g.m] = sizes.get(g.m, 0) + 1
        t = (rng.randint(1, 4), rng.randint(1, 4))
        res.instances += 1
        fast = arrows(g, t)
        slow, _ = oracles.brute_arrows(g, t)
        if fast.arrows != slow:
            res.fail(f"{g.to_json()} t={t}: fast={fast.arrows} naive={slow}")
        if fast.witness is not None and not construction_refutes(fast.witness, t):
            res.fail(f"{g.to_json()} t={t}: witness does not refute")
    res.details["edge_counts"] = {str(k): v for k, v in sorted(sizes.items())}
    return res


def suite_theorem(trials: int = 10_000, seed: int = 7, targets=((1, 1), (2, 1), (2, 2)), s: int = 2) -> SuiteResult:
    res = SuiteResult("theorem", "sampled s-connectors at n = bound: some colour reaches t_j and "
                      "an explicit matching is certified", seed=seed)
    per = max(1, trials // len(targets))
    reports = []
    for i, t in enumerate(targets):
        count = per if i < len(targets) - 1 else trials - per * (len(targets) - 1)
        rep = verify_theorem_main(t, s, trials=count, seed=seed + i)
        res.instances += rep.trials
        reports.append({"t": list(t), "n": rep.params["n"], "seed": rep.seed, "stats": rep.stats})
        if not rep.verdict:
            res.fail(f"t={t}: {rep.stats}")
    res.details["runs"] = reports
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "ge": suite_ge,
    "matching": suite_matching,
    "cd": suite_cd,
    "cisolate": suite_cisolate,
    "sigma": suite_sigma,
    "decycle": suite_decycle,
    "distil": suite_distil,
    "structure": suite_structure,
    "sharp": suite_sharp,
    "cl": suite_cl,
    "discussion": suite_discussion,
    "oracle": suite_oracle,
    "theorem": suite_theorem,
}
