"""Exact two-phase success probability vs Monte Carlo on random small instances.

    python scripts/oracle_vs_mc.py --instances 50 --trials 100000 > oracle_vs_mc.csv
"""

import argparse
import csv
import math
import random
import sys
from dataclasses import dataclass

from propb.experiment import montecarlo
from propb.hypergraph import Hypergraph, serialize
from propb.oracle import exact_two_phase


@dataclass
class Config:
    instances: int = 50
    trials: int = 100_000
    max_n: int = 6
    max_m: int = 5
    seed: int = 2


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["instance", "n", "m", "exact", "estimate", "std_err", "z", "edges"])
    for i in range(cfg.instances):
        n = rng.randint(3, cfg.max_n)
        edges = tuple(tuple(rng.sample(range(n), rng.choice((2, 3)))) for _ in range(rng.randint(1, cfg.max_m)))
        H = Hypergraph(n, edges)
        exact = exact_two_phase(H).success_prob
        res = montecarlo(H, cfg.trials, cfg.seed * 1000 + i)
        p = float(exact)
        sigma = math.sqrt(p * (1 - p) / cfg.trials)
        z = (res.estimate - p) / sigma if sigma else 0.0
        body = serialize(H).split("\n", 1)[1].strip().replace("\n", ";")
        out.writerow([i, n, H.m, str(exact), repr(res.estimate), repr(res.std_err), f"{z:.3f}", body])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    main(Config(**vars(ap.parse_args())))
