"""Bad-event statistics across a range of q on mixed-size instances.

Prints one CSV row per q: means of mono_count, Y, D2, X, Y_e with standard
errors, flag rates, and the references q, 2q, q/k.

    python scripts/event_identities.py --q 1 2 3 4 --samples 100000
"""

import argparse
import sys
from dataclasses import dataclass, field

from propb.events import AlphaParams
from propb.experiment import event_campaign, to_csv
from propb.generators import mixture, target_q_counts


@dataclass
class Config:
    q: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 3.0, 4.0])
    sizes: list[int] = field(default_factory=lambda: [3, 4, 5])
    n: int = 24
    samples: int = 100_000
    seed: int = 5
    alpha: float = 16.0
    workers: int = 4


def main(cfg: Config) -> None:
    alphas = AlphaParams(cfg.alpha, cfg.alpha, cfg.alpha, cfg.alpha)
    rows = []
    for i, q in enumerate(cfg.q):
        H = mixture(cfg.n, list(target_q_counts(q, cfg.sizes).items()), cfg.seed + i)
        res = event_campaign(H, cfg.samples, cfg.seed, alphas, focal_edge=0, workers=cfg.workers)
        res.experiment = f"events_q{q:g}"
        rows.append(res)
    sys.stdout.write(to_csv(rows))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=float, nargs="+", default=Config().q)
    ap.add_argument("--sizes", type=int, nargs="+", default=Config().sizes)
    for name in ("n", "samples", "seed", "workers"):
        ap.add_argument(f"--{name}", type=int, default=getattr(Config(), name))
    ap.add_argument("--alpha", type=float, default=Config().alpha)
    main(Config(**vars(ap.parse_args())))
