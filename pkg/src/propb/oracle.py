"""Exact ground truth for tiny instances.

Both coloring procedures use weights only through comparisons, and i.i.d.
continuous weights make all n! vertex orders equally likely.  Exact success
probabilities are therefore rational with denominator dividing ``2^n n!``
(two-phase) or ``n!`` (greedy).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .hypergraph import Hypergraph
from .twophase import BLUE, RED, Color

MAX_COLORABLE_N = 30
MAX_TWO_PHASE_N = 8
MAX_GREEDY_N = 10


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExactResult:
    success_prob: Fraction
    failure_prob: Fraction
    trace_count: int
    edge_red_prob: Fraction | None = None


def is_two_colorable(H: Hypergraph) -> tuple[bool, tuple[Color, ...] | None]:
    """Backtracking search with forced-color propagation."""
    if H.n > MAX_COLORABLE_N:
        raise TooLarge(f"n={H.n} exceeds {MAX_COLORABLE_N}")
    incident: list[list[int]] = [[] for _ in range(H.n)]
    for i, e in enumerate(H.edges):
        for v in e:
            incident[v].append(i)
    color = [-1] * H.n

    def propagate(v: int, trail: list[int]) -> bool:
        stack = [v]
        while stack:
            u = stack.pop()
            for i in incident[u]:
                e = H.edges[i]
                free = [x for x in e if color[x] < 0]
                seen = {color[x] for x in e if color[x] >= 0}
                if len(seen) == 2:
                    continue
                if not free:
                    return False
                if len(free) == 1:
                    x = free[0]
                    color[x] = 1 - color[u]
                    trail.append(x)
                    stack.append(x)
        return True

    def search(v: int) -> bool:
        while v < H.n and color[v] >= 0:
            v += 1
        if v == H.n:
            return True
        for c in (BLUE, RED):
            trail = [v]
            color[v] = int(c)
            if propagate(v, trail) and search(v + 1):
                return True
            for x in trail:
                color[x] = -1
        return False

    if search(0):
        return True, tuple(Color(c) for c in color)
    return False, None


def _two_phase_counts(H: Hypergraph, first: int, focal: int | None) -> tuple[int, int, int]:
    """(proper, improper, focal-all-red) counts over orders starting with ``first``.

    All 2^n initial colorings are handled at once as numpy bit columns.
    """
    n = H.n
    codes = np.arange(1 << n, dtype=np.int64)
    ic = [((codes >> v) & 1).astype(bool) for v in range(n)]  # True = red
    init_mono = []
    for e in H.edges:
        all_red = np.logical_and.reduce([ic[v] for v in e])
        all_blue = ~np.logical_or.reduce([ic[v] for v in e])
        init_mono.append(all_red | all_blue)

    proper = improper = focal_red = 0
    rest = [v for v in range(n) if v != first]
    for tail in itertools.permutations(rest):
        order = (first,) + tail
        rank = [0] * n
        for r, v in enumerate(order):
            rank[v] = r
        headed: dict[int, list[int]] = {}
        for i, e in enumerate(H.edges):
            headed.setdefault(max(e, key=rank.__getitem__), []).append(i)
        flipped = [None] * n
        zero = np.zeros(1 << n, dtype=bool)
        for v in order:
            flip = zero
            for i in headed.get(v, ()):
                others = [flipped[u] for u in H.edges[i] if u != v]
                flip = flip | (init_mono[i] & ~np.logical_or.reduce(others))
            flipped[v] = flip
        final = [ic[v] ^ flipped[v] for v in range(n)]
        bad = zero
        for e in H.edges:
            red = np.logical_and.reduce([final[v] for v in e])
            blue = ~np.logical_or.reduce([final[v] for v in e])
            bad = bad | red | blue
        proper += int((~bad).sum())
        improper += int(bad.sum())
        if focal is not None:
            fin = np.logical_and.reduce([final[v] for v in H.edges[focal]])
            focal_red += int(fin.sum())
    return proper, improper, focal_red


def exact_two_phase(
    H: Hypergraph, focal_edge: int | None = None, workers: int = 1
) -> ExactResult:
    if H.n > MAX_TWO_PHASE_N:
        raise TooLarge(f"n={H.n} exceeds {MAX_TWO_PHASE_N}")
    if focal_edge is not None and not 0 <= focal_edge < H.m:
        raise ValueError(f"edge index {focal_edge} outside [0, {H.m})")
    total = (1 << H.n) * math.factorial(H.n)
    if H.n == 0:
        return ExactResult(Fraction(1), Fraction(0), 1, None if focal_edge is None else Fraction(0))
    firsts = range(H.n)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_two_phase_counts, [H] * H.n, firsts, [focal_edge] * H.n))
    else:
        parts = [_two_phase_counts(H, f, focal_edge) for f in firsts]
    proper = sum(p[0] for p in parts)
    improper = sum(p[1] for p in parts)
    red = sum(p[2] for p in parts)
    return ExactResult(
        success_prob=Fraction(proper, total),
        failure_prob=Fraction(improper, total),
        trace_count=total,
        edge_red_prob=None if focal_edge is None else Fraction(red, total),
    )


def exact_greedy(H: Hypergraph) -> ExactResult:
    """Exact fraction of the n! orders on which greedy coloring is proper.

    Counts orders by memoizing on (processed set, blue subset): the rest of
    a run depends only on which vertices are done and which of them are blue.
    """
    if H.n > MAX_GREEDY_N:
        raise TooLarge(f"n={H.n} exceeds {MAX_GREEDY_N}")
    n = H.n
    masks = [sum(1 << v for v in e) for e in H.edges]
    by_vertex: list[list[int]] = [[] for _ in range(n)]
    for mask in masks:
        for v in range(n):
            if mask >> v & 1:
                by_vertex[v].append(mask)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def completions(done: int, blue: int) -> int:
        if done == full:
            return 1
        total = 0
        for v in range(n):
            bit = 1 << v
            if done & bit:
                continue
            # blue is a subset of done, so f - v inside blue means v is last in f
            if any((mask & ~bit) & ~blue == 0 for mask in by_vertex[v]):
                # v turns red; any edge it completes as all red is a failure
                red_done = (done | bit) & ~blue
                if any(mask & red_done == mask for mask in by_vertex[v]):
                    continue
                total += completions(done | bit, blue)
            else:
                total += completions(done | bit, blue | bit)
        return total

    proper = completions(0, 0)
    total = math.factorial(n)
    return ExactResult(
        success_prob=Fraction(proper, total),
        failure_prob=Fraction(total - proper, total),
        trace_count=total,
    )
