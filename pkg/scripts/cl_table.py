"""Exact check of the Cockayne-Lorimer numbers for small targets.

For every t with bound = max(t) + Lambda_t + 1 <= max_r this decides K_bound
and K_{bound-1} by exhaustive search and prints one CSV row per t.
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from matchram.suites import cl_table


@dataclass
class Config:
    q: int = 2
    max_r: int = 7
    guard_edges: int = 28


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--max-r", type=int, default=Config.max_r)
    p.add_argument("--guard-edges", type=int, default=Config.guard_edges)
    a = p.parse_args(argv)
    cfg = Config(a.q, a.max_r, a.guard_edges)

    start = time.perf_counter()
    rows = cl_table(cfg.q, cfg.max_r, cfg.guard_edges)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["t", "n", "arrows_n", "arrows_n_minus_1", "extremal_refutes", "nodes"])
    for r in rows:
        w.writerow([",".join(map(str, r["t"])), r["n"], r["arrows_n"], r["arrows_n_minus_1"],
                    r["extremal_refutes"], r["nodes"]])
    ok = all(r["arrows_n"] and not r["arrows_n_minus_1"] and r["extremal_refutes"] for r in rows)
    print(f"# {len(rows)} targets, all exact: {ok}, {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
