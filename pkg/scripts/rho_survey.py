"""Exact rho_q for a handful of small graphs, with the arrowing target that
achieves it."""

import argparse
import sys
from dataclasses import dataclass

from matchram.connector import gen_complete_split, gen_odd_cycle
from matchram.graph import complete_bipartite, complete_graph, cycle_graph, path_graph, petersen_graph
from matchram.ramsey import rho


@dataclass
class Config:
    q: int = 2
    guard_edges: int = 28


GRAPHS = {
    "K3": lambda: complete_graph(3),
    "K5": lambda: complete_graph(5),
    "P4": lambda: path_graph(4),
    "C5": lambda: gen_odd_cycle(5),
    "C6": lambda: cycle_graph(6),
    "C7": lambda: gen_odd_cycle(7),
    "C9": lambda: gen_odd_cycle(9),
    "K3,3": lambda: complete_bipartite(3, 3),
    "split3,3": lambda: gen_complete_split(3, 3),
    "Petersen": petersen_graph,
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", type=int, default=Config.q)
    a = p.parse_args(argv)
    cfg = Config(q=a.q)
    print("graph,n,m,rho,achieving_t,weakly_cl")
    for name, make in GRAPHS.items():
        g = make()
        r = rho(g, cfg.q, cfg.guard_edges)
        print(f"{name},{g.n},{g.m},{r.value},\"{r.achieving_t}\",{r.value > 1}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
