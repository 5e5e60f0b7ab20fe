import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from propb.generators import GenSpec, generate, mixture, sample_subset, target_q_counts, uniform
from propb.hypergraph import HypergraphError, stats
from propb.rng import Stream


def test_only_possible_pair():
    for seed in range(5):
        assert uniform(2, 2, 1, seed).edges == ((0, 1),)


def test_uniform_q_exact():
    H = uniform(8, 64, 300, seed=11)
    assert stats(H).q == 300 * 2.0**-7
    assert all(len(e) == 8 for e in H.edges)


def test_deterministic():
    spec = GenSpec("mixture", n=30, profile=((3, 10), (5, 7)), seed=99)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec("mixture", n=30, profile=((3, 10), (5, 7)), seed=100))


def test_profile_counts_exact():
    H = mixture(20, [(3, 10), (5, 7), (2, 4)], seed=3)
    assert Counter(len(e) for e in H.edges) == {3: 10, 5: 7, 2: 4}
    assert [len(e) for e in H.edges] == [3] * 10 + [5] * 7 + [2] * 4


def test_edge_prefix_independent_of_later_edges():
    short = mixture(20, [(3, 5)], seed=8)
    long = mixture(20, [(3, 5), (4, 6)], seed=8)
    assert long.edges[:5] == short.edges


def test_pair_uniformity():
    H = uniform(2, 4, 10_000, seed=2024)
    counts = Counter(H.edges)
    assert len(counts) == 6
    p = 1 / 6
    se = math.sqrt(p * (1 - p) / 10_000)
    for c in counts.values():
        assert abs(c / 10_000 - p) <= 5 * se


@given(st.integers(1, 30), st.data())
def test_subset_valid(n, data):
    j = data.draw(st.integers(1, n))
    sub = sample_subset(n, j, Stream(data.draw(st.integers(0, 2**64 - 1))))
    assert len(set(sub)) == j and all(0 <= v < n for v in sub)
    assert list(sub) == sorted(sub)


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec("uniform", n=3, k=4, m=1),
        GenSpec("uniform", n=5, k=1, m=1),
        GenSpec("mixture", n=5, profile=((3, -1),)),
        GenSpec("weird", n=5),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(HypergraphError):
        generate(spec)


@pytest.mark.parametrize(
    "q, sizes, expected",
    [(0.5, [2], {2: 1}), (1.75, [3], {3: 7}), (0, [5], {5: 0})],
)
def test_target_q_examples(q, sizes, expected):
    assert target_q_counts(q, sizes) == expected


@given(
    st.floats(0, 50, allow_nan=False),
    st.lists(st.integers(2, 12), min_size=1, max_size=4),
)
def test_target_q_bracket(q, sizes):
    counts = target_q_counts(q, sizes)
    got = math.fsum(c * 2.0 ** (1 - j) for j, c in counts.items())
    assert got <= q < got + max(2.0 ** (1 - j) for j in sizes)
