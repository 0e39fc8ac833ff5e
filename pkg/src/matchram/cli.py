"""Command-line interface: verify, arrow, construct, distil, experiment.

Exit codes: 0 success, 1 a suite or contract failed, 2 configuration error
(including a search guard that needs raising).
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import suites
from .coloured import ColouredGraph, SearchGuardExceeded
from .compression import LemmaViolation, PreconditionError, distil
from .connector import (
    TVector,
    cl_extremal,
    gen_complete_split,
    gen_gnp,
    gen_odd_cycle,
    gen_random_regular,
    gnp_adversary_colouring,
    is_s_connector,
    konig_colouring,
    sample_s_connector,
    sharp_construction,
    split_star_colouring,
)
from .graph import (
    Graph,
    GraphError,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
)
from .ramsey import adversarial_colourings, arrows, rho

CSV_COLUMNS = ("trial", "n", "s", "q", "t", "colour", "nu", "threshold", "pass")
CONSTRUCTIONS = ("cl_extremal", "sharp", "split_star", "konig", "gnp_adversary")
GENERATORS = ("gnp", "regular", "split", "connector", "odd")


class ConfigError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    graph: str | None = None
    colouring: str | None = None
    construction: str | None = None
    t: TVector | None = None
    s: int = 1
    q: int | None = None
    seed: int | None = None
    trials: int = 100
    guard_n: int = 32
    guard_edges: int = 28
    guard_sigma: int = 26
    out: str | None = None
    format: str = "json"
    trace: str | None = None
    checked: bool = True
    suite: list[str] = field(default_factory=list)
    max_n: int | None = None
    max_r: int | None = None
    workers: int = 1
    with_rho: bool = False
    trials_given: bool = False

    def validate(self) -> None:
        if min(self.guard_n, self.guard_edges, self.guard_sigma) < 1:
            raise ConfigError("guards must be positive")
        if self.s < 1:
            raise ConfigError("--s must be positive")
        if self.trials < 1:
            raise ConfigError("--trials must be positive")
        if self.workers < 1:
            raise ConfigError("--workers must be positive")
        if self.q is not None and self.q < 1:
            raise ConfigError("--q must be positive")
        if self.format not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")


# ---------------------------------------------------------------------------
# Graph sources


_LITERALS: dict[str, Callable[..., Graph]] = {
    "K": complete_graph,
    "C": cycle_graph,
    "P": path_graph,
}


def is_generator_spec(text: str) -> bool:
    return text.split(":", 1)[0] in GENERATORS and ":" in text


def parse_literal(text: str) -> Graph | None:
    if text.lower() == "petersen":
        return petersen_graph()
    m = re.fullmatch(r"K(\d+),(\d+)", text)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"([KCP])(\d+)", text)
    if m:
        return _LITERALS[m.group(1)](int(m.group(2)))
    return None


def generate(spec: str, seed: int | None, guard_n: int = 32) -> Graph:
    """gnp:n:p, regular:n:d, split:c:i, connector:n:s, odd:l."""
    kind, *args = spec.split(":")
    try:
        if kind == "split":
            return gen_complete_split(int(args[0]), int(args[1]))
        if kind == "odd":
            return gen_odd_cycle(int(args[0]))
        if seed is None:
            raise ConfigError(f"generator '{spec}' needs --seed or MATCHRAM_SEED")
        if kind == "gnp":
            return gen_gnp(int(args[0]), float(args[1]), seed)
        if kind == "regular":
            return gen_random_regular(int(args[0]), int(args[1]), seed)
        if kind == "connector":
            n, s = int(args[0]), int(args[1])
            if n > guard_n:
                raise SearchGuardExceeded(f"connector sampling with n={n} exceeds guard {guard_n}; "
                                          "raise --guard-n to override")
            return sample_s_connector(n, s, seed)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad generator spec '{spec}': {exc}") from exc
    raise ConfigError(f"unknown generator '{kind}'")


def load_graph(source: str, seed: int | None = None, guard_n: int = 32) -> Graph:
    lit = parse_literal(source)
    if lit is not None:
        return lit
    if is_generator_spec(source):
        return generate(source, seed, guard_n)
    if not os.path.exists(source):
        raise ConfigError(f"graph source '{source}' is not a literal, generator spec or file")
    with open(source) as fh:
        text = fh.read()
    try:
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            if "layers" in data:
                return ColouredGraph.from_json(text).host
            return Graph.from_json(text)
        return Graph.from_edgelist(text)
    except (GraphError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read graph file '{source}': {exc}") from exc


def load_colouring(path: str, host: Graph) -> ColouredGraph:
    try:
        with open(path) as fh:
            return ColouredGraph.from_json(fh.read(), host=host)
    except (OSError, GraphError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read colouring '{path}': {exc}") from exc


# ---------------------------------------------------------------------------
# Output helpers


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def graph_summary(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "m": g.m}


# ---------------------------------------------------------------------------
# Commands


def _suite_kwargs(fn: Callable, cfg: CliConfig) -> dict[str, Any]:
    params = inspect.signature(fn).parameters
    kw: dict[str, Any] = {}
    if "seed" in params and cfg.seed is not None:
        kw["seed"] = cfg.seed
    if "trials" in params and cfg.trials_given:
        kw["trials"] = cfg.trials
    if "max_n" in params and cfg.max_n is not None:
        kw["max_n"] = cfg.max_n
    if "max_r" in params and cfg.max_r is not None:
        kw["max_r"] = cfg.max_r
    if "q" in params and cfg.q is not None:
        kw["q"] = cfg.q
    if "max_q" in params and cfg.q is not None:
        kw["max_q"] = cfg.q
    return kw


def cmd_verify(cfg: CliConfig) -> int:
    names = cfg.suite or [k for k in suites.SUITES if k != "theorem"]
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {sorted(suites.SUITES)}")
    results = []
    for name in names:
        fn = suites.SUITES[name]
        res = fn(**_suite_kwargs(fn, cfg))
        results.append(res.to_dict())
    ok = all(r["passed"] for r in results)
    emit(dumps({"passed": ok, "suites": results}), cfg.out)
    return 0 if ok else 1


def cmd_arrow(cfg: CliConfig) -> int:
    if cfg.graph is None or cfg.t is None:
        raise ConfigError("arrow needs --graph and --t")
    g = load_graph(cfg.graph, cfg.seed, cfg.guard_n)
    verdict = arrows(g, cfg.t, cfg.guard_edges)
    report = {
        "graph": cfg.graph,
        **graph_summary(g),
        "t": list(cfg.t.t),
        "arrows": verdict.arrows,
        "nodes_explored": verdict.nodes_explored,
        "witness": json.loads(verdict.witness.to_json()) if verdict.witness is not None else None,
    }
    if cfg.with_rho and g.m:
        r = rho(g, cfg.t.q, cfg.guard_edges)
        report["rho"] = {"value": str(r.value), "achieving_t": list(r.achieving_t.t)}
    emit(dumps(report), cfg.out)
    return 0


def cmd_construct(cfg: CliConfig) -> int:
    name = cfg.construction
    if name not in CONSTRUCTIONS:
        raise ConfigError(f"construction must be one of {CONSTRUCTIONS}")
    if name == "split_star":
        if cfg.q is None:
            raise ConfigError("split_star needs --q")
        _, cg = split_star_colouring(cfg.q, cfg.s)
    else:
        if cfg.t is None:
            raise ConfigError(f"{name} needs --t")
        if name == "cl_extremal":
            _, cg = cl_extremal(cfg.t)
        elif name == "sharp":
            _, cg = sharp_construction(cfg.t, cfg.s)
        else:
            if cfg.graph is None:
                raise ConfigError(f"{name} needs --graph")
            g = load_graph(cfg.graph, cfg.seed, cfg.guard_n)
            if name == "konig":
                cg = konig_colouring(g, cfg.t)
            else:
                cg = gnp_adversary_colouring(g, cfg.t)
                if cg is None:
                    sys.stderr.write("construction inapplicable: dense part already has a large matching\n")
                    return 1
    text = cg.to_json() + "\n"
    ColouredGraph.from_json(text)
    emit(text, cfg.out)
    return 0


def cmd_distil(cfg: CliConfig) -> int:
    if cfg.graph is None or cfg.colouring is None:
        raise ConfigError("distil needs --graph and --colouring")
    g = load_graph(cfg.graph, cfg.seed, cfg.guard_n)
    cg = load_colouring(cfg.colouring, g)
    if cfg.checked and not is_s_connector(g, cfg.s, guard_n=cfg.guard_n).verdict:
        raise ConfigError(f"host is not an {cfg.s}-connector")
    res = distil(cg, cfg.s, checked=cfg.checked, guard=cfg.guard_sigma, check_connector=False)
    if cfg.trace:
        with open(cfg.trace, "w") as fh:
            fh.write(res.trace_lines())
    report = {
        "n": g.n, "q": cg.q, "s": cfg.s,
        "eta": res.eta, "kappa": res.kappa,
        "T": sorted(res.T), "C_star": sorted(res.c_star),
        "K_star": sorted(res.k_star), "K_prime": sorted(res.k_prime),
        "nu_before": list(cg.nu_vector()), "nu_after": list(res.result.nu_vector()),
        "result": json.loads(res.result.to_json()),
    }
    emit(dumps(report), cfg.out)
    return 0


def _experiment_trial(args: tuple[str, int, TVector, int, int, int, bool]) -> dict[str, Any]:
    spec, trial_seed, t, s, guard_n, guard_edges, with_rho = args
    g = load_graph(spec, trial_seed, guard_n)
    kinds = adversarial_colourings(g, t, random.Random(trial_seed))
    for _ in range(trial_seed % 4):
        next(kinds)
    kind, cg = next(kinds)
    nu = cg.nu_vector()
    out: dict[str, Any] = {"n": g.n, "m": g.m, "kind": kind, "nu": list(nu)}
    if with_rho and g.m:
        r = rho(g, t.q, guard_edges)
        out["rho"] = str(r.value)
    return out


def cmd_experiment(cfg: CliConfig) -> int:
    if cfg.graph is None or cfg.t is None:
        raise ConfigError("experiment needs --graph and --t")
    if cfg.seed is None:
        raise ConfigError("experiment samples colourings and needs --seed or MATCHRAM_SEED")
    jobs = [(cfg.graph, cfg.seed + i, cfg.t, cfg.s, cfg.guard_n, cfg.guard_edges, cfg.with_rho)
            for i in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_experiment_trial, jobs))
    else:
        results = [_experiment_trial(j) for j in jobs]
    rows = []
    for i, r in enumerate(results):
        for j, (nu, tj) in enumerate(zip(r["nu"], cfg.t), start=1):
            rows.append({"trial": i, "n": r["n"], "s": cfg.s, "q": cfg.t.q, "t": str(cfg.t),
                         "colour": j, "nu": nu, "threshold": tj, "pass": nu >= tj})
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({**row, "pass": int(row["pass"])})
        emit(buf.getvalue(), cfg.out)
    else:
        arrowed = sum(1 for r in results if any(a >= b for a, b in zip(r["nu"], cfg.t)))
        summary: dict[str, Any] = {"trials": cfg.trials, "arrowed": arrowed, "seed": cfg.seed}
        if cfg.with_rho:
            summary["rho"] = [r.get("rho") for r in results]
        emit(dumps({"graph": cfg.graph, "t": list(cfg.t.t), "rows": rows,
                    "kinds": [r["kind"] for r in results], "summary": summary}), cfg.out)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "arrow": cmd_arrow,
    "construct": cmd_construct,
    "distil": cmd_distil,
    "experiment": cmd_experiment,
}


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="literal (K5, C7, P4, K3,3, Petersen), generator spec "
                        "(gnp:n:p, regular:n:d, split:c:i, connector:n:s, odd:l) or file")
    common.add_argument("--t", help="comma-separated target vector, e.g. 2,2")
    common.add_argument("--s", type=int, default=1)
    common.add_argument("--q", type=int)
    common.add_argument("--seed", type=int, help="RNG seed (falls back to MATCHRAM_SEED)")
    common.add_argument("--trials", type=int)
    common.add_argument("--guard-n", type=int, default=32, help="vertex guard for connector checks")
    common.add_argument("--guard-edges", type=int, default=28, help="edge guard for arrow search")
    common.add_argument("--guard-sigma", type=int, default=26, help="free-vertex guard for sigma search")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--trace", help="JSON-lines trace path for distil")
    common.add_argument("--checked", dest="checked", action="store_true", default=True)
    common.add_argument("--unchecked", dest="checked", action="store_false")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--rho", dest="with_rho", action="store_true", help="also report rho_q")

    p = argparse.ArgumentParser(prog="matchram", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", default=[], help=f"one of {sorted(suites.SUITES)}")
    v.add_argument("--max-n", type=int)
    v.add_argument("--max-r", type=int)
    sub.add_parser("arrow", parents=[common], help="decide G -> t K2 exactly")
    c = sub.add_parser("construct", parents=[common], help="emit a non-arrowing colouring")
    c.add_argument("construction", choices=CONSTRUCTIONS)
    d = sub.add_parser("distil", parents=[common], help="run the compression pipeline")
    d.add_argument("--colouring", required=True)
    sub.add_parser("experiment", parents=[common], help="sample graphs and colourings")
    return p


def config_from_args(ns: argparse.Namespace, env: dict[str, str] | None = None) -> CliConfig:
    env = os.environ if env is None else env
    seed = ns.seed
    if seed is None and env.get("MATCHRAM_SEED"):
        try:
            seed = int(env["MATCHRAM_SEED"])
        except ValueError as exc:
            raise ConfigError("MATCHRAM_SEED must be an integer") from exc
    try:
        t = TVector.parse(ns.t) if ns.t else None
    except ValueError as exc:
        raise ConfigError(f"bad --t '{ns.t}': {exc}") from exc
    cfg = CliConfig(
        command=ns.command,
        graph=ns.graph,
        colouring=getattr(ns, "colouring", None),
        construction=getattr(ns, "construction", None),
        t=t,
        s=ns.s,
        q=ns.q,
        seed=seed,
        trials=ns.trials if ns.trials is not None else 100,
        guard_n=ns.guard_n,
        guard_edges=ns.guard_edges,
        guard_sigma=ns.guard_sigma,
        out=ns.out,
        format=ns.format,
        trace=ns.trace,
        checked=ns.checked,
        suite=getattr(ns, "suite", []),
        max_n=getattr(ns, "max_n", None),
        max_r=getattr(ns, "max_r", None),
        workers=ns.workers,
        with_rho=ns.with_rho,
        trials_given=ns.trials is not None,
    )
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, PreconditionError, GraphError, SearchGuardExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except LemmaViolation as exc:
        sys.stderr.write(f"contract failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
