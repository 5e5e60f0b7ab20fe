"""Seeded Monte Carlo campaigns.

Trial ``i`` always draws from ``derive_seed(master_seed, i)``.  Trials are
cut into fixed-size chunks; ``workers`` only decides how many chunks run at
once (numba kernels release the GIL), and the per-trial results are
concatenated in trial order before any reduction.  Output therefore never
depends on the worker count.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bounds import simple_conditional_bound
from .events import AlphaParams, build_threat
from .hypergraph import Hypergraph, stats
from .rng import MASK64, derive_seed

CHUNK = 8192
PROCEDURES = ("twophase", "greedy")
STATISTICS = ("mono_count", "light", "Y", "D2", "X", "Y_e")


@dataclass
class MonteCarloResult:
    experiment: str
    seed: int
    trials: int
    successes: int
    estimate: float
    std_err: float
    event_means: dict[str, tuple[float, float]] = field(default_factory=dict)
    flag_rates: dict[str, float] = field(default_factory=dict)
    extras: dict[str, float] = field(default_factory=dict)
    per_trial: np.ndarray | None = field(default=None, repr=False)

    def csv_row(self) -> dict[str, object]:
        row: dict[str, object] = {
            "experiment": self.experiment,
            "seed": self.seed,
            "trials": self.trials,
            "estimate": self.estimate,
            "std_err": self.std_err,
        }
        for name, (mean, se) in self.event_means.items():
            row[f"{name}_mean"] = mean
            row[f"{name}_se"] = se
        for name, rate in self.flag_rates.items():
            row[f"rate_{name}"] = rate
        row.update(self.extras)
        return row


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(results: list[MonteCarloResult]) -> str:
    rows = [r.csv_row() for r in results]
    columns: list[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c, "")) for c in columns])
    return buf.getvalue()


def _chunks(trials: int) -> list[tuple[int, int]]:
    return [(s, min(CHUNK, trials - s)) for s in range(0, trials, CHUNK)]


def _run_chunks(fn, trials: int, workers: int) -> np.ndarray:
    spans = _chunks(trials)
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda span: fn(*span), spans))
    else:
        parts = [fn(*span) for span in spans]
    return np.concatenate(parts, axis=0)


def binomial_se(successes: int, trials: int) -> float:
    p = successes / trials
    return math.sqrt(p * (1.0 - p) / trials)


def mean_se(column: np.ndarray) -> tuple[float, float]:
    mean = float(np.mean(column))
    if column.shape[0] < 2:
        return mean, 0.0
    return mean, float(np.std(column, ddof=1) / math.sqrt(column.shape[0]))


def _uint(seed: int) -> np.uint64:
    return np.uint64(seed & MASK64)


def _check_edge(H: Hypergraph, e: int | None) -> None:
    if e is not None and not 0 <= e < H.m:
        raise ValueError(f"edge index {e} outside [0, {H.m})")


def montecarlo(
    H: Hypergraph,
    trials: int,
    master_seed: int,
    procedure: str = "twophase",
    focal_edge: int | None = None,
    workers: int = 1,
    keep_trials: bool = False,
) -> MonteCarloResult:
    """Success rate of a coloring procedure; success means a proper coloring.

    Two-phase per-trial columns: proper, focal all red, initially mono,
    recolored, unrepaired mono edges, red-shield breaches.  Greedy columns:
    failed, failing edges, failing edges without a conflicting partner.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_edge(H, focal_edge)
    indptr, indices = H.csr
    master = _uint(master_seed)
    extras: dict[str, float] = {}
    if procedure == "twophase":
        focal = -1 if focal_edge is None else int(focal_edge)
        data = _run_chunks(
            lambda s, c: kernels.two_phase_batch(indptr, indices, H.n, master, s, c, focal),
            trials,
            workers,
        )
        successes = int(data[:, 0].sum())
        if focal_edge is not None:
            extras["edge_red"] = float(data[:, 1].mean())
        extras["unrepaired"] = int(data[:, 4].sum())
        extras["shield_breaches"] = int(data[:, 5].sum())
        extras["excess_recolored"] = int((data[:, 3] > data[:, 2]).sum())
    elif procedure == "greedy":
        data = _run_chunks(
            lambda s, c: kernels.greedy_batch(indptr, indices, H.n, master, s, c),
            trials,
            workers,
        )
        successes = trials - int(data[:, 0].sum())
        extras["witnessless_failures"] = int(data[:, 2].sum())
    else:
        raise ValueError(f"unknown procedure {procedure!r}")
    return MonteCarloResult(
        experiment=f"mc_{procedure}",
        seed=master_seed,
        trials=trials,
        successes=successes,
        estimate=successes / trials,
        std_err=binomial_se(successes, trials),
        extras=extras,
        per_trial=data if keep_trials else None,
    )


def threat_arrays(H: Hypergraph, e: int | None):
    """CSR view of the threat hypergraph of edge ``e`` for the event kernel."""
    _check_edge(H, e)
    if e is None:
        z = np.zeros(0, dtype=np.int64)
        return np.zeros(1, dtype=np.int64), z, z, z
    threat = build_threat(H, e)
    sizes = [len(t.vertices) for t in threat.threat_edges]
    t_indptr = np.zeros(len(sizes) + 1, dtype=np.int64)
    t_indptr[1:] = np.cumsum(sizes, dtype=np.int64)
    t_indices = np.array([v for t in threat.threat_edges for v in t.vertices], dtype=np.int64)
    t_vertex = np.array([t.extension_vertex for t in threat.threat_edges], dtype=np.int64)
    t_size = np.array([t.extension_size for t in threat.threat_edges], dtype=np.int64)
    return t_indptr, t_indices, t_vertex, t_size


def event_samples(
    H: Hypergraph,
    trials: int,
    master_seed: int,
    alphas: AlphaParams = AlphaParams(),
    focal_edge: int | None = None,
    workers: int = 1,
) -> np.ndarray:
    """(trials, 12) matrix of per-sample event statistics (``kernels.EVENT_COLUMNS``)."""
    indptr, indices = H.csr
    q = stats(H).q
    avec = np.array([alphas.a, alphas.b, alphas.c, alphas.d], dtype=np.float64)
    t_arrays = threat_arrays(H, focal_edge)
    master = _uint(master_seed)
    return _run_chunks(
        lambda s, c: kernels.event_batch(indptr, indices, H.n, master, s, c, q, avec, *t_arrays),
        trials,
        workers,
    )


def event_campaign(
    H: Hypergraph,
    trials: int,
    master_seed: int,
    alphas: AlphaParams = AlphaParams(),
    focal_edge: int | None = None,
    workers: int = 1,
    keep_trials: bool = False,
) -> MonteCarloResult:
    """Means of the bad-event statistics next to their analytic references.

    ``successes`` counts samples where none of the four bad events fired.
    """
    st = stats(H)
    data = event_samples(H, trials, master_seed, alphas, focal_edge, workers)
    col = {name: i for i, name in enumerate(kernels.EVENT_COLUMNS)}
    means = {name: mean_se(data[:, col[name]]) for name in STATISTICS}
    rates = {name: float(data[:, col[f"flag_{name}"]].mean()) for name in "ABCD"}
    good = int((data[:, col["flag_A"] : col["flag_D"] + 1].sum(axis=1) == 0).sum())
    extras: dict[str, float] = {
        "q": st.q,
        "two_q": 2.0 * st.q,
        "q_over_k": st.q / st.s_min if st.s_min else 0.0,
        "markov_A": 1.0 / alphas.a,
        "markov_B": 1.0 / alphas.b,
        "markov_C": 2.0 / alphas.c,
        "markov_D": 2.0 / alphas.d,
        "viol_R": int(data[:, col["viol_R"]].sum()),
        "viol_X": int(data[:, col["viol_X"]].sum()),
    }
    return MonteCarloResult(
        experiment="events",
        seed=master_seed,
        trials=trials,
        successes=good,
        estimate=good / trials,
        std_err=binomial_se(good, trials),
        event_means=means,
        flag_rates=rates,
        extras=extras,
        per_trial=data if keep_trials else None,
    )


def events_csv(data: np.ndarray, master_seed: int) -> str:
    """One row per sample: derived seed, then the event statistics."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = ["seed", "mono_count", "light", "Y", "D2", "X", "Y_e", "A", "B", "C", "D"]
    writer.writerow(names)
    for i, row in enumerate(data):
        writer.writerow(
            [derive_seed(master_seed, i), int(row[0]), int(row[1])]
            + [repr(float(x)) for x in row[2:6]]
            + [int(x) for x in row[6:10]]
        )
    return buf.getvalue()


@dataclass(frozen=True)
class XBin:
    x_lo: float
    x_hi: float
    good: int
    red: int
    bound_truncated: float
    bound_exponential: float

    @property
    def frequency(self) -> float:
        return self.red / self.good if self.good else 0.0


def x_conditional(
    H: Hypergraph,
    e: int,
    trials: int,
    master_seed: int,
    alphas: AlphaParams = AlphaParams(),
    bin_width: float = 0.05,
    workers: int = 1,
) -> list[XBin]:
    """Binned frequency of ``e`` ending all red given X, among good samples.

    Weights are continuous, so conditioning on ``X = x`` is replaced by bins
    of width ``bin_width``.  Each bin carries the conditional bound evaluated
    at its upper edge (the bound grows with x) with the sum capped at
    ``ceil(alpha_A q)`` terms.  The event and two-phase kernels draw the same
    initial state for trial ``i``, so their columns line up.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    _check_edge(H, e)
    events = event_samples(H, trials, master_seed, alphas, e, workers)
    runs = montecarlo(H, trials, master_seed, "twophase", e, workers, keep_trials=True).per_trial
    good = events[:, 6:10].sum(axis=1) == 0
    x = events[:, 4]
    red = runs[:, 1] == 1
    idx = np.floor(x / bin_width).astype(np.int64)
    s = len(H.edges[e])
    cap = max(1, math.ceil(alphas.a * stats(H).q))
    out = []
    for b in np.unique(idx[good]):
        mask = good & (idx == b)
        hi = (int(b) + 1) * bin_width
        trunc, expo = simple_conditional_bound(hi, s, cap)
        out.append(XBin(int(b) * bin_width, hi, int(mask.sum()), int((mask & red).sum()), trunc.value, expo.value))
    return out


def x_conditional_csv(bins: list[XBin]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x_lo", "x_hi", "good", "red", "frequency", "bound_truncated", "bound_exponential"])
    for b in bins:
        writer.writerow([repr(b.x_lo), repr(b.x_hi), b.good, b.red, repr(b.frequency),
                         repr(b.bound_truncated), repr(b.bound_exponential)])
    return buf.getvalue()
