"""Where the per-edge bounds fall below their targets, as k grows.

For each k, reports the improved-bound q threshold and whether the cosh
form, evaluated at that q for an edge of size k, meets 1/(3 q 2^(k-1)).

    python scripts/bound_table.py --k 10 100 1000 1000000 1000000000
"""

import argparse
import csv
import sys

from propb.bounds import improved_edge_bound, target_bound, uniform_edge_bound
from propb.events import AlphaParams


def main(ks: list[int], alpha: float) -> None:
    alphas = AlphaParams(alpha, alpha, alpha, alpha)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["k", "q_threshold", "log_cosh_form", "log_target", "below_target", "uniform_q_threshold"])
    for k in ks:
        thr = improved_edge_bound(k, 1.0, k, alphas).q_threshold
        r = improved_edge_bound(k, thr, k, alphas)
        target = target_bound(thr, k) if thr > 0 else None
        uni = uniform_edge_bound(k, 1.0, alphas.b).q_threshold
        out.writerow([
            k, repr(thr), repr(r.cosh_form.log_value),
            repr(target.log_value) if target else "",
            bool(target and r.cosh_form.log_value < target.log_value), repr(uni),
        ])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[10, 100, 10**3, 10**6, 10**9])
    ap.add_argument("--alpha", type=float, default=16.0)
    args = ap.parse_args()
    main(args.k, args.alpha)
