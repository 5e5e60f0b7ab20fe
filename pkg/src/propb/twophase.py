"""Two-phase random recoloring.

Phase one gives every vertex an independent initial color and a uniform
weight in (0, 1).  Phase two visits vertices by increasing weight and flips
a vertex exactly when it is the heaviest vertex of some initially
monochromatic edge that has no flipped vertex yet.  Weight ties are broken
by vertex id, so the processing key is ``(w[v], v)`` everywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .hypergraph import Hypergraph
from .rng import output, to_unit


class Color(enum.IntEnum):
    BLUE = 0
    RED = 1

    def complement(self) -> "Color":
        return Color(1 - self)

    @property
    def letter(self) -> str:
        return "B" if self is Color.BLUE else "R"


BLUE, RED = Color.BLUE, Color.RED


@dataclass(frozen=True)
class InitialState:
    ic: tuple[Color, ...]
    w: tuple[float, ...]

    def __post_init__(self):
        if len(self.ic) != len(self.w):
            raise ValueError("ic and w must have the same length")
        object.__setattr__(self, "ic", tuple(Color(c) for c in self.ic))
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))
        for x in self.w:
            if not 0.0 < x < 1.0:
                raise ValueError(f"weight {x} outside (0, 1)")

    @property
    def n(self) -> int:
        return len(self.ic)

    def key(self, v: int) -> tuple[float, int]:
        return (self.w[v], v)

    def order(self) -> list[int]:
        return sorted(range(self.n), key=self.key)

    def flipped(self) -> "InitialState":
        return InitialState(tuple(c.complement() for c in self.ic), self.w)


def sample_initial(H: Hypergraph | int, seed: int) -> InitialState:
    """Initial colors from stream words ``0..n-1``, weights from ``n..2n-1``."""
    n = H if isinstance(H, int) else H.n
    ic = tuple(Color(output(seed, v) >> 63) for v in range(n))
    w = tuple(to_unit(output(seed, n + v)) for v in range(n))
    return InitialState(ic, w)


def heaviest(edge: Sequence[int], init: InitialState) -> int:
    return max(edge, key=init.key)


def lightest(edge: Sequence[int], init: InitialState) -> int:
    return min(edge, key=init.key)


def is_mono(edge: Sequence[int], coloring: Sequence[int]) -> bool:
    first = coloring[edge[0]]
    return all(coloring[v] == first for v in edge)


def is_proper(H: Hypergraph, coloring: Sequence[int]) -> tuple[bool, frozenset[int]]:
    bad = frozenset(i for i, e in enumerate(H.edges) if is_mono(e, coloring))
    return not bad, bad


@dataclass(frozen=True)
class ColoringTrace:
    order: tuple[int, ...]
    final: tuple[Color, ...]
    recolored: frozenset[int]
    reasons: dict[int, tuple[int, ...]]
    initially_mono: frozenset[int]
    final_mono: frozenset[int]

    @property
    def proper(self) -> bool:
        return not self.final_mono


def recolor(H: Hypergraph, init: InitialState) -> ColoringTrace:
    if init.n != H.n:
        raise ValueError("initial state does not match the hypergraph")
    initially_mono = frozenset(i for i, e in enumerate(H.edges) if is_mono(e, init.ic))
    pending: dict[int, list[int]] = {}
    for i in sorted(initially_mono):
        pending.setdefault(heaviest(H.edges[i], init), []).append(i)

    order = init.order()
    flipped = [False] * H.n
    reasons: dict[int, tuple[int, ...]] = {}
    for v in order:
        # every other vertex of an edge headed by v is already final here
        why = tuple(
            i for i in pending.get(v, ()) if not any(flipped[u] for u in H.edges[i])
        )
        if why:
            flipped[v] = True
            reasons[v] = why

    final = tuple(c.complement() if flipped[v] else c for v, c in enumerate(init.ic))
    _, final_mono = is_proper(H, final)
    return ColoringTrace(
        order=tuple(order),
        final=final,
        recolored=frozenset(v for v in range(H.n) if flipped[v]),
        reasons=reasons,
        initially_mono=initially_mono,
        final_mono=final_mono,
    )


def run(H: Hypergraph, seed: int) -> ColoringTrace:
    return recolor(H, sample_initial(H, seed))


def trace_records(init: InitialState, trace: ColoringTrace) -> list[dict]:
    """One JSON-ready record per vertex: id, w, ic, c, reasons."""
    return [
        {
            "id": v,
            "w": init.w[v],
            "ic": init.ic[v].letter,
            "c": trace.final[v].letter,
            "reasons": list(trace.reasons.get(v, ())),
        }
        for v in range(init.n)
    ]
