import itertools
import math

import pytest
from hypothesis import given, strategies as st

from propb.hypergraph import Hypergraph, fano
from propb.twophase import (
    BLUE,
    RED,
    Color,
    InitialState,
    is_proper,
    recolor,
    sample_initial,
    trace_records,
)

from .conftest import hypergraphs

B, R = BLUE, RED


def test_color_complement():
    assert BLUE.complement() is RED and RED.complement() is BLUE


def test_blue_pair_repaired():
    H = Hypergraph(2, ((0, 1),))
    tr = recolor(H, InitialState((B, B), (0.2, 0.9)))
    assert tr.recolored == {1}
    assert tr.final == (B, R)
    assert tr.proper and tr.reasons == {1: (0,)}


def test_proper_start_untouched():
    H = Hypergraph(2, ((0, 1),))
    for w in [(0.2, 0.9), (0.9, 0.2)]:
        tr = recolor(H, InitialState((B, R), w))
        assert tr.final == (B, R) and not tr.recolored


def test_hand_trace_path():
    H = Hypergraph(3, ((0, 1), (1, 2)))
    tr = recolor(H, InitialState((B, B, R), (0.2, 0.9, 0.5)))
    assert tr.order == (0, 2, 1)
    assert tr.recolored == {1}
    assert tr.reasons == {1: (0,)}
    assert tr.final == (B, R, R)
    assert tr.final_mono == {1}


def test_multiple_reasons_recorded():
    H = Hypergraph(3, ((0, 2), (1, 2)))
    tr = recolor(H, InitialState((R, R, R), (0.1, 0.2, 0.3)))
    assert tr.reasons == {2: (0, 1)}
    assert tr.final == (R, R, B)


def test_weight_ties_broken_by_id():
    H = Hypergraph(2, ((0, 1),))
    tr = recolor(H, InitialState((B, B), (0.5, 0.5)))
    assert tr.order == (0, 1) and tr.recolored == {1}


def test_is_proper_examples():
    H = Hypergraph(2, ((0, 1),))
    assert is_proper(H, (B, R)) == (True, frozenset())
    assert is_proper(H, (B, B)) == (False, frozenset({0}))


def test_fano_has_no_proper_coloring():
    H = fano()
    assert not any(is_proper(H, c)[0] for c in itertools.product((B, R), repeat=7))


def test_sample_initial_deterministic():
    H = Hypergraph(5, ((0, 1),))
    assert sample_initial(H, 42) == sample_initial(H, 42)
    assert sample_initial(H, 42) != sample_initial(H, 43)


def test_sample_initial_marginals():
    n = 100_000
    init = sample_initial(n, 2024)
    blue = sum(1 for c in init.ic if c == B) / n
    assert abs(blue - 0.5) <= 5 * math.sqrt(0.25 / n)
    mean_w = sum(init.w) / n
    assert abs(mean_w - 0.5) <= 5 * math.sqrt(1 / 12 / n)
    assert all(0 < x < 1 for x in init.w)


def test_initial_state_rejects_bad_weights():
    with pytest.raises(ValueError):
        InitialState((B,), (1.0,))
    with pytest.raises(ValueError):
        InitialState((B, R), (0.5,))


def test_trace_records():
    H = Hypergraph(2, ((0, 1),))
    init = InitialState((B, B), (0.2, 0.9))
    recs = trace_records(init, recolor(H, init))
    assert recs[1] == {"id": 1, "w": 0.9, "ic": "B", "c": "R", "reasons": [0]}


@given(hypergraphs(max_n=10, max_m=12), st.integers(0, 2**64 - 1))
def test_run_invariants(H, seed):
    init = sample_initial(H, seed)
    tr = recolor(H, init)
    for v in range(H.n):
        assert (v in tr.recolored) == (tr.final[v] != init.ic[v])
    for e in tr.initially_mono:
        assert any(v in tr.recolored for v in H.edges[e])
    assert len(tr.recolored) <= len(tr.initially_mono)
    for v, why in tr.reasons.items():
        for i in why:
            assert i in tr.initially_mono
            assert max(H.edges[i], key=init.key) == v
    assert set(tr.reasons) == set(tr.recolored)
    for i in tr.initially_mono:
        if init.ic[H.edges[i][0]] == R:
            assert not all(tr.final[v] == R for v in H.edges[i])
    assert tr.final_mono == is_proper(H, tr.final)[1]


@given(hypergraphs(max_n=10, max_m=12), st.integers(0, 2**64 - 1))
def test_order_only(H, seed):
    init = sample_initial(H, seed)
    ranks = {v: r for r, v in enumerate(init.order())}
    by_rank = InitialState(init.ic, tuple((ranks[v] + 1) / (H.n + 1) for v in range(H.n)))
    assert recolor(H, init) == recolor(H, by_rank)


@given(hypergraphs(max_n=10, max_m=12), st.integers(0, 2**64 - 1))
def test_color_symmetry(H, seed):
    init = sample_initial(H, seed)
    a, b = recolor(H, init), recolor(H, init.flipped())
    assert b.final == tuple(c.complement() for c in a.final)
    assert a.recolored == b.recolored
