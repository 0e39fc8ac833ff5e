"""How far below the 13(s-1) allowance do pipeline outputs sit?

Runs the distilling pipeline on sampled s-connectors, restricts to V*, and
tabulates |V - K| for the largest monochromatic component K.
"""

import argparse
import random
import sys
from collections import Counter
from dataclasses import dataclass

from matchram.compression import check_small_components, distil
from matchram.suites import distil_instance


@dataclass
class Config:
    s_values: tuple = (1, 2, 3)
    instances: int = 100
    max_n: int = 20
    q: int = 2
    seed: int = 0


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=Config.instances)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--s", type=int, action="append", help="connector parameter, repeatable")
    a = p.parse_args(argv)
    cfg = Config(s_values=tuple(a.s or Config.s_values), instances=a.instances, max_n=a.max_n,
                 q=a.q, seed=a.seed)

    rng = random.Random(cfg.seed)
    print("s,outside,count,bound")
    for s in cfg.s_values:
        hist = Counter()
        attempts = 0
        while sum(hist.values()) < cfg.instances:
            attempts += 1
            if attempts > 50 * cfg.instances:
                print(f"s={s}: no valid instances up to n={cfg.max_n}", file=sys.stderr)
                return 1
            cg = distil_instance(rng, rng.randint(2 * s + 2, cfg.max_n), s, cfg.q)
            if cg is None:
                continue
            sub, _ = distil(cg, s).restricted()
            if sub.n < 2:
                continue
            hist[check_small_components(sub, s).outside] += 1
        for k in sorted(hist):
            print(f"{s},{k},{hist[k]},{13 * (s - 1)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
