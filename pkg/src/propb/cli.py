"""Command line interface: ``propb {gen,stats,color,mc,events,bound,oracle}``.

Exit codes: 0 success, 2 invalid input, 3 instance too large for the oracle.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds, experiment, generators, greedy, oracle, twophase
from .events import AlphaParams
from .hypergraph import HypergraphError, read_hg, serialize, stats

EXIT_INVALID = 2
EXIT_TOO_LARGE = 3


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _alphas(args) -> AlphaParams:
    return AlphaParams(args.alphaA, args.alphaB, args.alphaC, args.alphaD)


def _profile(text: str) -> list[tuple[int, int]]:
    pairs = []
    for part in text.split(","):
        size, count = part.split(":")
        pairs.append((int(size), int(count)))
    return pairs


def cmd_gen(args) -> None:
    if args.q is not None:
        sizes = [int(s) for s in args.sizes.split(",")]
        counts = generators.target_q_counts(args.q, sizes)
        spec = generators.GenSpec("mixture", n=args.n, profile=tuple(counts.items()), seed=args.seed)
    elif args.kind == "uniform":
        spec = generators.GenSpec("uniform", n=args.n, k=args.k, m=args.m, seed=args.seed)
    else:
        spec = generators.GenSpec("mixture", n=args.n, profile=tuple(_profile(args.profile)), seed=args.seed)
    _emit(serialize(generators.generate(spec)), args.output)


def cmd_stats(args) -> None:
    st = stats(read_hg(args.file))
    doc = {
        "n": st.n,
        "m": st.m,
        "s_min": st.s_min,
        "s_max": st.s_max,
        "q": st.q,
        "q_profile": {str(j): v for j, v in st.q_profile.items()},
    }
    _emit(json.dumps(doc) + "\n", args.output)


def cmd_color(args) -> None:
    H = read_hg(args.file)
    init = twophase.sample_initial(H, args.seed)
    if args.procedure == "greedy":
        tr = greedy.greedy_color(H, init.w)
        summary = {"procedure": "greedy", "proper": not tr.failed, "failing_edges": sorted(tr.failing_edges)}
        records = [
            {"id": v, "w": init.w[v], "c": tr.final[v].letter} for v in range(H.n)
        ]
    else:
        tr = twophase.recolor(H, init)
        summary = {
            "procedure": "twophase",
            "proper": tr.proper,
            "initially_mono": sorted(tr.initially_mono),
            "recolored": sorted(tr.recolored),
            "final_mono": sorted(tr.final_mono),
        }
        records = twophase.trace_records(init, tr)
    if args.trace:
        _emit("".join(json.dumps(r) + "\n" for r in records), args.output)
        sys.stderr.write(json.dumps(summary) + "\n")
    else:
        _emit(json.dumps(summary) + "\n", args.output)


def cmd_mc(args) -> None:
    H = read_hg(args.file)
    res = experiment.montecarlo(
        H, args.trials, args.seed, args.procedure, focal_edge=args.edge, workers=args.workers
    )
    _emit(experiment.to_csv([res]), args.output)


def cmd_events(args) -> None:
    H = read_hg(args.file)
    if args.conditional:
        if args.edge is None:
            raise ValueError("--conditional needs --edge")
        bins = experiment.x_conditional(
            H, args.edge, args.trials, args.seed, _alphas(args), args.bin_width, args.workers
        )
        _emit(experiment.x_conditional_csv(bins), args.output)
    elif args.summary:
        res = experiment.event_campaign(
            H, args.trials, args.seed, _alphas(args), args.edge, workers=args.workers
        )
        _emit(experiment.to_csv([res]), args.output)
    else:
        data = experiment.event_samples(H, args.trials, args.seed, _alphas(args), args.edge, args.workers)
        _emit(experiment.events_csv(data, args.seed), args.output)


def _bound_row(args) -> dict[str, object]:
    alphas = _alphas(args)
    kind = args.kind
    if kind == "envelope":
        value = bounds.convex_envelope(args.f0, args.fM, args.lam)
        return {"kind": kind, "f0": args.f0, "fM": args.fM, "lambda": args.lam,
                "log_value": math.log(value) if value > 0 else -math.inf, "value": value}
    if kind == "conditional":
        cap = math.inf if args.cap is None else args.cap
        trunc, expo = bounds.simple_conditional_bound(args.x, args.s, cap)
        return {"kind": kind, "x": args.x, "s": args.s, "cap": cap,
                "log_value": trunc.log_value, "value": trunc.value,
                "log_exponential": expo.log_value, "exponential": expo.value}
    if kind == "simple":
        b = bounds.simple_edge_bound(args.k, args.q, args.s, alphas)
        target = bounds.target_bound(args.q, args.s)
        return {"kind": kind, "k": args.k, "q": args.q, "s": args.s,
                "log_value": b.log_value, "value": b.value,
                "below_target": b.log_value < target.log_value}
    if kind == "improved":
        r = bounds.improved_edge_bound(args.k, args.q, args.s, alphas)
        return {"kind": kind, "k": args.k, "q": args.q, "s": args.s,
                "log_value": r.cosh_form.log_value, "value": r.cosh_form.value,
                "log_exp_form": r.exp_form.log_value, "exp_form": r.exp_form.value,
                "q_threshold": r.q_threshold, "within_threshold": r.within_threshold,
                "target_met": r.target_met}
    if kind == "greedy":
        K = args.K if args.K is not None else args.k
        b = bounds.greedy_failure_bound(args.k, K, args.q)
        return {"kind": kind, "k": args.k, "K": K, "q": args.q,
                "p": bounds.greedy_p(args.k, args.q),
                "log_value": b.log_value, "value": b.value, "below_one": b.value < 1.0}
    if kind == "uniform":
        r = bounds.uniform_edge_bound(args.k, args.q, args.alphaB)
        return {"kind": kind, "k": args.k, "q": args.q, "alpha_B": args.alphaB,
                "log_value": r.bound.log_value, "value": r.bound.value,
                "q_threshold": r.q_threshold, "within_threshold": args.q <= r.q_threshold}
    raise ValueError(f"unknown bound kind {kind!r}")


def cmd_bound(args) -> None:
    row = _bound_row(args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(row))
    writer.writerow([repr(v) if isinstance(v, float) else v for v in row.values()])
    _emit(buf.getvalue(), args.output)


def cmd_oracle(args) -> None:
    H = read_hg(args.file)
    if args.procedure == "greedy":
        res = oracle.exact_greedy(H)
    else:
        res = oracle.exact_two_phase(H, args.edge, workers=args.workers)
    lines = [
        f"success_prob {res.success_prob.numerator}/{res.success_prob.denominator} {float(res.success_prob)!r}",
        f"trace_count {res.trace_count}",
    ]
    if res.edge_red_prob is not None:
        r = res.edge_red_prob
        lines.append(f"edge_red_prob {r.numerator}/{r.denominator} {float(r)!r}")
    _emit("\n".join(lines) + "\n", args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="propb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("-o", "--output", help="write here instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    def alphas(p):
        for name in "ABCD":
            p.add_argument(f"--alpha{name}", type=float, default=16.0)

    p = sub.add_parser("gen", help="generate a random .hg instance")
    common(p)
    p.add_argument("--kind", choices=["uniform", "mixture"], default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--profile", default="", help="size:count pairs, e.g. 3:10,4:6")
    p.add_argument("--q", type=float, help="target q; overrides --kind/--m/--profile")
    p.add_argument("--sizes", default="3", help="edge sizes sharing --q, e.g. 3,4")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="print q, q_j, s_min, s_max as JSON")
    common(p, seed=False)
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("color", help="one coloring run")
    common(p)
    p.add_argument("file")
    p.add_argument("--procedure", choices=experiment.PROCEDURES, default="twophase")
    p.add_argument("--trace", action="store_true", help="JSON-lines record per vertex")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("mc", help="Monte Carlo success rate (CSV)")
    common(p)
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--procedure", choices=experiment.PROCEDURES, default="twophase")
    p.add_argument("--edge", type=int, help="also estimate Pr[edge ends all red]")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("events", help="per-sample bad-event statistics (CSV)")
    common(p)
    alphas(p)
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--edge", type=int, help="focal edge for X and Y_e")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--summary", action="store_true", help="one aggregated row instead")
    p.add_argument("--conditional", action="store_true",
                   help="frequency of the edge ending red per X bin, with the bound")
    p.add_argument("--bin-width", type=float, default=0.05)
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("bound", help="evaluate an analytic bound (CSV)")
    common(p, seed=False)
    alphas(p)
    p.add_argument("--kind", required=True,
                   choices=["simple", "improved", "greedy", "uniform", "envelope", "conditional"])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--K", type=int)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--cap", type=float)
    p.add_argument("--f0", type=float, default=0.0)
    p.add_argument("--fM", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("oracle", help="exact success probability by enumeration")
    common(p, seed=False)
    p.add_argument("file")
    p.add_argument("--edge", type=int)
    p.add_argument("--procedure", choices=experiment.PROCEDURES, default="twophase")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except oracle.TooLarge as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_TOO_LARGE
    except (HypergraphError, bounds.DomainError, ValueError, OSError, IndexError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    sys.exit(main())
