"""Random uniform and mixed-size hypergraph instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .hypergraph import Hypergraph, HypergraphError
from .rng import Stream, derive_seed


@dataclass(frozen=True)
class GenSpec:
    """What to generate.

    ``kind="uniform"`` uses ``k`` and ``m``; ``kind="mixture"`` uses
    ``profile``, a sequence of ``(size, count)`` pairs emitted in order.
    """

    kind: str
    n: int
    k: int = 0
    m: int = 0
    profile: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    seed: int = 0

    def size_profile(self) -> tuple[tuple[int, int], ...]:
        if self.kind == "uniform":
            return ((self.k, self.m),)
        if self.kind == "mixture":
            return tuple((int(j), int(c)) for j, c in self.profile)
        raise HypergraphError(f"unknown generator kind {self.kind!r}")

    def validate(self) -> None:
        for j, count in self.size_profile():
            if j < 2:
                raise HypergraphError(f"edge size {j} < 2")
            if count < 0:
                raise HypergraphError(f"negative edge count for size {j}")
            if j > self.n:
                raise HypergraphError(f"edge size {j} exceeds vertex count {self.n}")


def sample_subset(n: int, j: int, stream: Stream) -> tuple[int, ...]:
    """Uniform j-subset of range(n) via a sparse partial Fisher-Yates shuffle."""
    swapped: dict[int, int] = {}
    picked = []
    for i in range(j):
        r = i + stream.below(n - i)
        picked.append(swapped.get(r, r))
        swapped[r] = swapped.get(i, i)
    return tuple(sorted(picked))


def generate(spec: GenSpec) -> Hypergraph:
    """Sample every edge independently; edge ``i`` draws from ``derive_seed(seed, i)``."""
    spec.validate()
    edges = []
    for j, count in spec.size_profile():
        for _ in range(count):
            stream = Stream(derive_seed(spec.seed, len(edges)))
            edges.append(sample_subset(spec.n, j, stream))
    return Hypergraph(spec.n, tuple(edges))


def uniform(k: int, n: int, m: int, seed: int) -> Hypergraph:
    return generate(GenSpec("uniform", n=n, k=k, m=m, seed=seed))


def mixture(n: int, profile: Sequence[tuple[int, int]], seed: int) -> Hypergraph:
    return generate(GenSpec("mixture", n=n, profile=tuple(profile), seed=seed))


def target_q_counts(q_target: float, sizes: Sequence[int]) -> dict[int, int]:
    """Edge counts per size whose q stays at or just below ``q_target``.

    The target is split evenly across ``sizes``; each share is floored to a
    whole number of edges, then the leftover is filled greedily, largest
    per-edge contribution first, while it still fits.  The result satisfies
    ``q <= q_target < q + max_j 2**(1-j)``.
    """
    if q_target < 0:
        raise ValueError("q_target must be nonnegative")
    sizes = sorted(set(int(j) for j in sizes))
    if any(j < 2 for j in sizes):
        raise ValueError("edge sizes must be >= 2")
    counts = {j: 0 for j in sizes}
    if not sizes:
        return counts
    share = q_target / len(sizes)
    for j in sizes:
        counts[j] = math.floor(math.ldexp(share, j - 1))
    used = math.fsum(math.ldexp(c, 1 - j) for j, c in counts.items())
    for j in sizes:
        unit = math.ldexp(1.0, 1 - j)
        extra = math.floor(math.ldexp(q_target - used, j - 1))
        if extra > 0:
            counts[j] += extra
            used = math.fsum(math.ldexp(c, 1 - j) for j, c in counts.items())
        while used > q_target and counts[j] > 0:
            counts[j] -= 1
            used -= unit
        while used + unit <= q_target:
            counts[j] += 1
            used += unit
    return counts
