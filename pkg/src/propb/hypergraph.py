"""Finite nonuniform hypergraphs, their q-statistics, and the ``.hg`` format.

A hypergraph has dense vertex ids ``0..n-1`` and an ordered sequence of
edges.  Each edge is a strictly increasing tuple of at least two ids.  The
edge sequence is a multiset: repeated edges are kept and counted.

``.hg`` text format::

    # optional comment lines
    n m
    <ids of edge 0>
    ...
    <ids of edge m-1>
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Base class for invalid hypergraph input."""


class EdgeTooSmall(HypergraphError):
    pass


class VertexOutOfRange(HypergraphError):
    pass


class EmptyVertexSet(HypergraphError):
    pass


class DuplicateVertex(HypergraphError):
    pass


class FormatError(HypergraphError):
    pass


def _check_edge(raw: Iterable[int], n: int, index: int) -> tuple[int, ...]:
    ids = list(raw)
    for v in ids:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise HypergraphError(f"edge {index}: vertex id {v!r} is not an integer")
    distinct = sorted(set(int(v) for v in ids))
    if len(distinct) < 2:
        raise EdgeTooSmall(f"edge {index} has {len(distinct)} distinct vertex(es); need >= 2")
    if len(distinct) != len(ids):
        raise DuplicateVertex(f"edge {index} repeats a vertex id: {ids}")
    if distinct[0] < 0 or distinct[-1] >= n:
        raise VertexOutOfRange(f"edge {index} has ids outside [0, {n}): {ids}")
    return tuple(distinct)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise HypergraphError("vertex count must be nonnegative")
        if self.n == 0 and self.edges:
            raise EmptyVertexSet("edges given for a hypergraph with no vertices")
        edges = tuple(_check_edge(e, self.n, i) for i, e in enumerate(self.edges))
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sizes(self) -> list[int]:
        return [len(e) for e in self.edges]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays of the edge lists, for the numba kernels."""
        indptr = np.zeros(self.m + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(e) for e in self.edges], dtype=np.int64)
        indices = np.fromiter(
            (v for e in self.edges for v in e), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    def disjoint_union(self, other: "Hypergraph") -> "Hypergraph":
        shift = self.n
        edges = self.edges + tuple(tuple(v + shift for v in e) for e in other.edges)
        return Hypergraph(self.n + other.n, edges)


def validate(raw_edges: Sequence[Sequence[int]], n: int) -> Hypergraph:
    """Build a normalized :class:`Hypergraph`, raising on any invalid edge.

    Ids inside an edge are sorted.  A repeated id inside one edge is an
    error rather than being collapsed; if collapsing would leave fewer than
    two vertices the error is :class:`EdgeTooSmall`.
    """
    return Hypergraph(int(n), tuple(tuple(e) for e in raw_edges))


@dataclass(frozen=True)
class HypergraphStats:
    n: int
    m: int
    s_min: int | None
    s_max: int | None
    q: float
    q_profile: dict[int, float] = field(default_factory=dict)


def stats(H: Hypergraph) -> HypergraphStats:
    counts = Counter(len(e) for e in H.edges)
    # q_j = m_j * 2^(1-j): exact dyadic scaling
    profile = {j: math.ldexp(float(counts[j]), 1 - j) for j in sorted(counts)}
    q = math.fsum(profile.values())
    return HypergraphStats(
        n=H.n,
        m=H.m,
        s_min=min(counts) if counts else None,
        s_max=max(counts) if counts else None,
        q=q,
        q_profile=profile,
    )


def parse(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("missing 'n m' header")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"malformed header {lines[0]!r}; expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError(f"non-integer token in header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise FormatError("negative count in header")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for i, ln in enumerate(body):
        try:
            edges.append([int(tok) for tok in ln.split()])
        except ValueError:
            raise FormatError(f"non-integer token on edge line {i}: {ln!r}") from None
    return validate(edges, n)


def serialize(H: Hypergraph) -> str:
    out = [f"{H.n} {H.m}"]
    out.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(out) + "\n"


def read_hg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_hg(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(H))


# small named instances used throughout tests and the CLI

FANO_EDGES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def fano() -> Hypergraph:
    return Hypergraph(7, FANO_EDGES)


def triangle() -> Hypergraph:
    return Hypergraph(3, ((0, 1), (1, 2), (0, 2)))
