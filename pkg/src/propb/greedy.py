"""Single-pass random greedy coloring and its failure diagnostics.

Vertices are visited by increasing ``(weight, id)``.  A vertex is colored
blue unless it is the heaviest vertex of an edge whose other vertices are
all blue already; then it is colored red.  No edge can end up all blue, so
the procedure fails exactly when some edge ends up all red.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .hypergraph import Hypergraph
from .twophase import BLUE, RED, Color, sample_initial


@dataclass(frozen=True)
class GreedyTrace:
    order: tuple[int, ...]
    final: tuple[Color, ...]
    forced_red: frozenset[int]
    failing_edges: frozenset[int]

    @property
    def failed(self) -> bool:
        return bool(self.failing_edges)


@dataclass(frozen=True)
class GreedyDiagnostics:
    p: float
    light_edges: frozenset[int]
    heavy_edges: frozenset[int]
    conflicting_pairs: frozenset[tuple[int, int]]


def _key(weights: Sequence[float]):
    return lambda v: (weights[v], v)


def greedy_color(H: Hypergraph, weights: Sequence[float]) -> GreedyTrace:
    if len(weights) != H.n:
        raise ValueError("weights do not match the hypergraph")
    key = _key(weights)
    headed: dict[int, list[int]] = {}
    for i, e in enumerate(H.edges):
        headed.setdefault(max(e, key=key), []).append(i)

    order = sorted(range(H.n), key=key)
    color = [BLUE] * H.n
    for v in order:
        for i in headed.get(v, ()):
            if all(color[u] == BLUE for u in H.edges[i] if u != v):
                color[v] = RED
                break
    failing = frozenset(
        i for i, e in enumerate(H.edges) if all(color[u] == RED for u in e)
    )
    return GreedyTrace(
        order=tuple(order),
        final=tuple(color),
        forced_red=frozenset(v for v in range(H.n) if color[v] == RED),
        failing_edges=failing,
    )


def greedy_run(H: Hypergraph, seed: int) -> GreedyTrace:
    """Greedy coloring driven by the weights of ``sample_initial(H, seed)``."""
    return greedy_color(H, sample_initial(H, seed).w)


def default_p(k: int, q: float) -> float:
    """``ln(4q)/k`` clamped to [0, 1]."""
    if q <= 0:
        return 0.0
    return min(1.0, max(0.0, math.log(4.0 * q) / k))


def greedy_diagnostics(
    H: Hypergraph, weights: Sequence[float], p: float
) -> GreedyDiagnostics:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    key = _key(weights)
    low, high = (1.0 - p) / 2.0, (1.0 + p) / 2.0
    light = frozenset(
        i for i, e in enumerate(H.edges) if max(weights[v] for v in e) <= low
    )
    heavy = frozenset(
        i for i, e in enumerate(H.edges) if min(weights[v] for v in e) >= high
    )
    by_lightest: dict[int, list[int]] = {}
    for i, e in enumerate(H.edges):
        by_lightest.setdefault(min(e, key=key), []).append(i)
    pairs = frozenset(
        (i, j)
        for i, e in enumerate(H.edges)
        for j in by_lightest.get(max(e, key=key), ())
    )
    return GreedyDiagnostics(p=p, light_edges=light, heavy_edges=heavy, conflicting_pairs=pairs)
