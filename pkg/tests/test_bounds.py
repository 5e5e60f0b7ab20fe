import math
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from propb.bounds import (
    DomainError,
    convex_envelope,
    greedy_failure_bound,
    improved_edge_bound,
    simple_conditional_bound,
    simple_edge_bound,
    target_bound,
    uniform_edge_bound,
)
from propb.events import AlphaParams


def test_envelope_examples():
    assert convex_envelope(0, 10, 0.3) == pytest.approx(3.0)
    assert convex_envelope(1, 1, 0.77) == 1.0
    assert convex_envelope(0, math.e - 1, 1) == math.e - 1
    with pytest.raises(DomainError):
        convex_envelope(2, 1, 0.5)
    with pytest.raises(DomainError):
        convex_envelope(0, 1, 1.5)


def test_envelope_keeps_fractions_exact():
    assert convex_envelope(Fraction(1, 3), Fraction(2), Fraction(1, 7)) == Fraction(1, 7) * 2 + Fraction(6, 7) * Fraction(1, 3)


def random_convex_case(rng: random.Random):
    """Support points, probabilities and a convex f (sorted slopes), all rational."""
    M = rng.randint(1, 20)
    pts = sorted(rng.sample(range(M + 1), rng.randint(1, min(M + 1, 6))))
    weights = [rng.randint(1, 10) for _ in pts]
    total = sum(weights)
    probs = [Fraction(wt, total) for wt in weights]
    slopes = sorted(Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(M))
    f = [Fraction(rng.randint(0, 10))]
    for s in slopes:
        f.append(f[-1] + s)
    # shift so f >= 0 on [0, M]; convexity and f(M) >= f(0) are required
    low = min(f)
    f = [x - low for x in f]
    if f[M] < f[0]:
        f = f[::-1]
    mean = sum(p * x for p, x in zip(probs, pts))
    lam = mean / M + Fraction(rng.randint(0, 3), 10) * (1 - mean / M)
    return f, pts, probs, lam, M


def lemma_violations(cases: int, seed: int) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        f, pts, probs, lam, M = random_convex_case(rng)
        expected = sum(p * f[x] for p, x in zip(probs, pts))
        if expected > convex_envelope(f[0], f[M], lam):
            bad += 1
    return bad


def test_convex_lemma_small():
    assert lemma_violations(200, 7) == 0


def test_conditional_examples():
    _, expo = simple_conditional_bound(math.log(2), 3, 10**6)
    assert expo.value == pytest.approx(1 / 8, rel=1e-15)
    zero = simple_conditional_bound(0.0, 5, 3)
    assert zero[0].value == 0.0 and zero[1].value == 0.0
    trunc, expo = simple_conditional_bound(1.0, 2, 1)
    assert trunc.value == 0.25
    assert expo.value == pytest.approx((math.e - 1) / 4, rel=1e-14)


def test_conditional_domain():
    with pytest.raises(DomainError):
        simple_conditional_bound(-1.0, 2)
    with pytest.raises(DomainError):
        simple_conditional_bound(1.0, 2, 0)


def test_conditional_large_x_in_log_space():
    trunc, expo = simple_conditional_bound(5000.0, 10)
    assert expo.value == math.inf
    assert expo.log_value == pytest.approx(5000 - 10 * math.log(2))
    assert trunc.log_value <= expo.log_value + 1e-9


def truncation_violations(points: int) -> int:
    bad = 0
    for i in range(points):
        x = 30.0 * i / (points - 1)
        for cap in (1, 2, 5, 48, math.inf):
            t, e = simple_conditional_bound(x, 3, cap)
            if t.value > e.value:
                bad += 1
    return bad


def test_truncated_below_exponential():
    assert truncation_violations(500) == 0


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 7.3, 19.9, 30.0])
def test_truncation_converges(x):
    t, e = simple_conditional_bound(x, 2, 10**6)
    assert abs(t.value - e.value) <= 1e-12 * max(1.0, e.value)
    assert e.value == pytest.approx(math.expm1(x) / 4, rel=1e-12)


def cosh_series(x: float, C: int = 60) -> float:
    return math.fsum(x ** (2 * c) / math.factorial(2 * c) for c in range(C + 1))


def cosh_series_error(steps: int = 201) -> float:
    worst = 0.0
    for i in range(steps):
        x = 20.0 * i / (steps - 1)
        worst = max(worst, abs(cosh_series(x) - math.cosh(x)) / math.cosh(x))
    return worst


def test_cosh_series():
    assert cosh_series_error() <= 1e-12


def exact_binomial_sum(r, p, s, cap):
    """Exact probability sum of the focused-edge argument, for rational p_j."""
    total = Fraction(0)
    for cs in product(*(range(rj + 1) for rj in r)):
        c = sum(cs)
        if not 1 <= c <= cap:
            continue
        term = Fraction(1)
        for rj, pj, cj in zip(r, p, cs):
            term *= math.comb(rj, cj) * (pj / 2) ** cj * Fraction(1, 2) ** (rj - cj)
        total += term
    return total / 2 ** (s - sum(r))


def random_profile(rng: random.Random):
    groups = rng.randint(1, 4)
    r = [rng.randint(0, 4) for _ in range(groups)]
    while sum(r) > 12:
        r[rng.randrange(groups)] -= 1
    p = [Fraction(rng.randint(0, 20), 20) for _ in range(groups)]
    s = sum(r) + rng.randint(0, 4)
    s = max(s, 2)
    cap = rng.choice([1, 2, 3, 5, 12, math.inf])
    return r, p, s, cap


def binomial_violations(cases: int, seed: int) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        r, p, s, cap = random_profile(rng)
        exact = exact_binomial_sum(r, p, s, cap)
        x = float(sum(rj * pj for rj, pj in zip(r, p)))
        trunc, expo = simple_conditional_bound(x, s, cap)
        # a single blue vertex makes the first inequality an equality; allow float rounding
        if float(exact) > trunc.value * (1 + 1e-12) or trunc.value > expo.value:
            bad += 1
    return bad


def test_binomial_sum_dominated():
    assert binomial_violations(60, 3) == 0


def test_simple_edge_bound_substitution():
    a = AlphaParams(b=math.e, c=1.0)
    assert simple_edge_bound(10, 1.0, 4, a).value == pytest.approx(math.e / 16 / 10)
    with pytest.raises(DomainError):
        simple_edge_bound(10, 1 / 16, 4)


def test_simple_edge_bound_against_target():
    k, q, s = 10**6, 2.0, 10**6
    a = AlphaParams()
    below = simple_edge_bound(k, q, s, a).log_value < target_bound(q, s).log_value
    lhs = math.log(3 * q) + a.c * q * math.log(a.b * q) - math.log(2 * a.c * k)
    assert below == (lhs < 0)


def test_simple_edge_bound_monotone_in_q():
    vals = [simple_edge_bound(100, q, 100).log_value for q in (0.1, 0.5, 1.0, 2.0, 4.0)]
    assert vals == sorted(vals)


def test_improved_bound():
    assert improved_edge_bound(10, 0.0, 10).cosh_form.value == 0.0
    k = 10**9
    r = improved_edge_bound(k, 0.9 * math.log(k) / math.sqrt(512), k)
    assert r.within_threshold
    assert r.q_threshold == pytest.approx(0.9 * math.log(k) / math.sqrt(512))
    assert r.cosh_form.value == 0.0  # far below double range, but the log survives
    assert math.isfinite(r.cosh_form.log_value)


@given(st.integers(2, 10**9), st.floats(0, 50), st.integers(2, 2000))
def test_cosh_form_below_exp_form(k, q, s):
    r = improved_edge_bound(k, q, s)
    assert r.cosh_form.log_value <= r.exp_form.log_value


def test_greedy_bound_examples():
    b = greedy_failure_bound(8, 8, 0.25)
    assert b.value == pytest.approx(0.5)
    with pytest.raises(DomainError):
        greedy_failure_bound(8, 7, 1.0)


@given(st.integers(2, 60), st.integers(0, 30), st.floats(0.3, 20))
def test_greedy_bound_nondecreasing_in_K(k, extra, q):
    assert greedy_failure_bound(k, k + extra, q).log_value <= greedy_failure_bound(k, k + extra + 1, q).log_value + 1e-12


def test_greedy_bound_uniform_regime():
    # with K = k the bound drops below 1 once q is a small multiple of ln k
    assert greedy_failure_bound(200, 200, 2.0).value < 1
    assert greedy_failure_bound(8, 8, 10.0).value > 1


def test_uniform_bound():
    r = uniform_edge_bound(8, 1.0, 2.0)
    assert r.bound.value == pytest.approx(1 / 2048)
    assert r.epsilon == 1.0
    assert uniform_edge_bound(8, 1e-9, 2.0).bound.value < 1e-20


@given(st.integers(2, 10**6), st.floats(1e-3, 50), st.floats(1.05, 20))
def test_uniform_threshold_rearrangement(k, q, alpha_b):
    r = uniform_edge_bound(k, q, alpha_b)
    lhs = r.bound.log_value + k * math.log(2) + math.log(q) + math.log1p(r.epsilon) - math.log(r.epsilon)
    if abs(q - r.q_threshold) > 1e-9 * q:
        assert (lhs <= 0) == (q <= r.q_threshold)
