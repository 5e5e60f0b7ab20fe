"""Bad-event statistics and edge-focused quantities of the two-phase procedure.

Global statistics (one per sampled initial state):

* ``mono_count`` -- initially monochromatic edges (event A: > alpha_A * q)
* light edges -- initially monochromatic edges of size j with every weight
  below ``1 - p_j``, ``p_j = ln(alpha_B * q) / j`` (event B: any light edge)
* ``Q_j`` -- edges of size j that become monochromatic after dropping one
  vertex; ``Y = sum_j Q_j / j`` (event C: Y > alpha_C * q)
* ``d2(f) = (|f| + 1) * (1 - second largest weight in f)`` for initially
  monochromatic f, else 0; ``D2 = sum d2`` (event D: D2 > alpha_D * q)

Focused statistics for a fixed edge ``e`` only look at colors and weights
outside ``e``: the threat hypergraph (``f - e`` for every f meeting e in one
vertex), endangered vertices of ``e`` and their severities, ``X`` and
``Y_e``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .hypergraph import Hypergraph, stats
from .twophase import BLUE, RED, ColoringTrace, InitialState, is_mono

EVENTS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class AlphaParams:
    a: float = 16.0
    b: float = 16.0
    c: float = 16.0
    d: float = 16.0

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) <= 0:
            raise ValueError("alpha parameters must be positive")

    @property
    def failure_budget(self) -> float:
        """Sum of the Markov bounds on the four bad events."""
        return 1 / self.a + 1 / self.b + 2 / self.c + 2 / self.d


def light_test_enabled(q: float, alphas: AlphaParams) -> bool:
    return alphas.b * q > 1.0


def p_value(j: int, q: float, alphas: AlphaParams) -> float:
    """``ln(alpha_B q) / j`` clamped to [0, 1]; 0 when ``alpha_B q <= 1``."""
    if not light_test_enabled(q, alphas):
        return 0.0
    return min(1.0, math.log(alphas.b * q) / j)


def p_schedule(sizes, q: float, alphas: AlphaParams) -> dict[int, float]:
    return {j: p_value(j, q, alphas) for j in sorted(set(sizes))}


def second_weight(edge, w) -> float:
    top, second = sorted(edge, key=lambda v: (w[v], v))[-2:][::-1]
    return w[second]


def d2(edge, init: InitialState) -> float:
    if not is_mono(edge, init.ic):
        return 0.0
    return (len(edge) + 1) * (1.0 - second_weight(edge, init.w))


def almost_mono(edge, ic) -> bool:
    blue = sum(1 for v in edge if ic[v] == BLUE)
    return blue <= 1 or blue >= len(edge) - 1


@dataclass(frozen=True)
class EventReport:
    q: float
    mono_count: int
    p_schedule: dict[int, float]
    light_edges: frozenset[int]
    Q_profile: dict[int, int]
    Y: float
    d2: tuple[float, ...]
    D2: float
    flags: dict[str, bool]
    q_undefined: bool = False

    @property
    def good(self) -> bool:
        return not any(self.flags.values())


def event_report(
    H: Hypergraph, init: InitialState, alphas: AlphaParams = AlphaParams(), q: float | None = None
) -> EventReport:
    if q is None:
        q = stats(H).q
    sizes = H.sizes()
    sched = p_schedule(sizes, q, alphas)
    enabled = light_test_enabled(q, alphas)

    mono = [is_mono(e, init.ic) for e in H.edges]
    light = frozenset(
        i
        for i, e in enumerate(H.edges)
        if enabled and mono[i] and all(init.w[v] < 1.0 - sched[len(e)] for v in e)
    )
    Q = Counter({j: 0 for j in sched})
    for e in H.edges:
        if almost_mono(e, init.ic):
            Q[len(e)] += 1
    Y = math.fsum(Q[j] / j for j in sorted(Q))
    d2s = tuple(d2(e, init) for e in H.edges)
    D2 = math.fsum(d2s)
    mono_count = sum(mono)
    flags = {
        "A": mono_count > alphas.a * q,
        "B": bool(light),
        "C": Y > alphas.c * q,
        "D": D2 > alphas.d * q,
    }
    return EventReport(
        q=q,
        mono_count=mono_count,
        p_schedule=sched,
        light_edges=light,
        Q_profile=dict(sorted(Q.items())),
        Y=Y,
        d2=d2s,
        D2=D2,
        flags=flags,
        q_undefined=q == 0,
    )


@dataclass(frozen=True)
class ThreatEdge:
    vertices: tuple[int, ...]
    extension_edge: int
    extension_vertex: int

    @property
    def extension_size(self) -> int:
        return len(self.vertices) + 1


@dataclass(frozen=True)
class ThreatHypergraph:
    base_edge: int
    vertices: frozenset[int]
    threat_edges: tuple[ThreatEdge, ...]


def build_threat(H: Hypergraph, e: int) -> ThreatHypergraph:
    base = set(H.edges[e])
    threats = []
    for i, f in enumerate(H.edges):
        common = [v for v in f if v in base]
        if len(common) == 1:
            rest = tuple(v for v in f if v not in base)
            threats.append(ThreatEdge(rest, i, common[0]))
    return ThreatHypergraph(
        base_edge=e,
        vertices=frozenset(range(H.n)) - base,
        threat_edges=tuple(threats),
    )


@dataclass(frozen=True)
class FocusReport:
    endangered: frozenset[int]
    severity: dict[int, int]
    R_profile: dict[int, int]
    X: float
    Y_e: float
    lightest_threat: dict[int, int]
    delta: dict[int, float]
    blue_threats: tuple[int, ...] = field(default=())


def focus_report(
    H: Hypergraph,
    e: int,
    threat: ThreatHypergraph | None,
    init: InitialState,
    alphas: AlphaParams = AlphaParams(),
    q: float | None = None,
) -> FocusReport:
    """Focused statistics for edge ``e``; reads ``init`` only outside ``e``."""
    if threat is None:
        threat = build_threat(H, e)
    if q is None:
        q = stats(H).q
    ic, w = init.ic, init.w

    blue = tuple(
        t for t, te in enumerate(threat.threat_edges) if all(ic[u] == BLUE for u in te.vertices)
    )
    endangering: dict[int, list[int]] = {}
    for t in blue:
        endangering.setdefault(threat.threat_edges[t].extension_vertex, []).append(t)

    severity = {
        v: min(threat.threat_edges[t].extension_size for t in ts)
        for v, ts in endangering.items()
    }
    R = Counter(severity.values())
    X = math.fsum(R[j] * p_value(j, q, alphas) for j in sorted(R))
    Y_e = math.fsum(1.0 / (len(threat.threat_edges[t].vertices) + 1) for t in blue)

    def top_weight(t: int) -> float:
        return max(w[u] for u in threat.threat_edges[t].vertices)

    lightest = {v: min(ts, key=lambda t: (top_weight(t), t)) for v, ts in endangering.items()}
    delta = {
        v: (len(threat.threat_edges[t].vertices) + 2) * (1.0 - top_weight(t))
        for v, t in lightest.items()
    }
    return FocusReport(
        endangered=frozenset(endangering),
        severity=dict(sorted(severity.items())),
        R_profile=dict(sorted(R.items())),
        X=X,
        Y_e=Y_e,
        lightest_threat=dict(sorted(lightest.items())),
        delta=dict(sorted(delta.items())),
        blue_threats=blue,
    )


def necessary_conditions(
    H: Hypergraph,
    e: int,
    init: InitialState,
    trace: ColoringTrace,
    alphas: AlphaParams = AlphaParams(),
    report: EventReport | None = None,
    focus: FocusReport | None = None,
) -> tuple[bool, list[str]]:
    """Check the conditions any run that turns ``e`` all red must meet.

    Applies when ``e`` ends all red and neither A nor B fired.  Then between
    one and ``alpha_A q`` vertices of ``e`` start blue, and each of them is
    endangered with weight at least ``1 - p_severity``.  The weight
    condition is only checked while the light test is enabled.

    Returns ``(applicable, violations)``.
    """
    if report is None:
        report = event_report(H, init, alphas)
    edge = H.edges[e]
    if any(trace.final[v] != RED for v in edge) or report.flags["A"] or report.flags["B"]:
        return False, []
    if focus is None:
        focus = focus_report(H, e, None, init, alphas, report.q)
    problems = []
    blue = [v for v in edge if init.ic[v] == BLUE]
    if not 1 <= len(blue) <= alphas.a * report.q:
        problems.append(f"{len(blue)} initially blue vertices in edge {e}")
    for v in blue:
        if v not in focus.endangered:
            problems.append(f"vertex {v} recolored but not endangered")
        elif light_test_enabled(report.q, alphas):
            bar = 1.0 - p_value(focus.severity[v], report.q, alphas)
            if init.w[v] < bar:
                problems.append(f"vertex {v} weight {init.w[v]} < {bar}")
    return True, problems
