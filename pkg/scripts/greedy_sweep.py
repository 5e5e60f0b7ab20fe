"""Greedy failure rate against its analytic bound for k-uniform instances.

Sweeps the edge count so that q runs from below 1/4 (p = 0) up to q_max.

    python scripts/greedy_sweep.py --k 8 --n 40 --q-max 2 --steps 9
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from propb.bounds import greedy_failure_bound, greedy_p
from propb.experiment import montecarlo
from propb.generators import uniform
from propb.hypergraph import stats


@dataclass
class Config:
    k: int = 8
    n: int = 40
    q_max: float = 2.0
    steps: int = 9
    trials: int = 100_000
    seed: int = 3
    workers: int = 4


def main(cfg: Config) -> None:
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["m", "q", "p", "failure_rate", "std_err", "bound", "witnessless"])
    per_edge = 2.0 ** (1 - cfg.k)
    for i in range(1, cfg.steps + 1):
        m = max(1, round(cfg.q_max * i / cfg.steps / per_edge))
        H = uniform(cfg.k, cfg.n, m, cfg.seed + i)
        q = stats(H).q
        res = montecarlo(H, cfg.trials, cfg.seed, "greedy", workers=cfg.workers)
        bound = greedy_failure_bound(cfg.k, cfg.k, q).value
        out.writerow(
            [m, repr(q), repr(greedy_p(cfg.k, q)), repr((res.trials - res.successes) / res.trials), repr(res.std_err),
             repr(bound), res.extras["witnessless_failures"]]
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    main(Config(**vars(ap.parse_args())))
