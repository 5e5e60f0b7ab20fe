"""Closed-form bounds on the failure probabilities, evaluated in log space.

Every bound is returned as a :class:`Bound` carrying both the natural log
and the value, so inputs like ``k = 10**9`` stay representable; ``value``
overflows to ``inf`` rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .events import AlphaParams
from .greedy import default_p as greedy_p

LN2 = math.log(2.0)


class DomainError(ValueError):
    pass


class Bound(NamedTuple):
    log_value: float
    value: float

    @classmethod
    def from_log(cls, log_value: float) -> "Bound":
        return cls(log_value, _exp(log_value))


def _exp(x: float) -> float:
    if x == -math.inf:
        return 0.0
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def convex_envelope(f0: float, fM: float, lam: float) -> float:
    """``lam * f(M) + (1 - lam) * f(0)``: the cap on ``E[f(X)]`` for convex f
    when ``0 <= X <= M`` and ``E[X] <= lam * M``."""
    # integer constants keep Fraction inputs exact
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda={lam} outside [0, 1]")
    if f0 < 0:
        raise DomainError("f(0) must be nonnegative")
    if fM < f0:
        raise DomainError(f"f(M)={fM} < f(0)={f0}")
    return lam * fM + (1 - lam) * f0


def _series_terms(x: float, cap: float) -> list[float]:
    """``x**c / c!`` for ``c = 1..cap``, stopping once terms are negligible."""
    terms = []
    if x <= 0.0:
        return terms
    term, total = 1.0, 0.0
    c = 1
    while c <= cap:
        term *= x / c
        total += term
        terms.append(term)
        if c > x and term < 1e-18 * total:
            break
        c += 1
    return terms


def _log_series(x: float, cap: float) -> float:
    """log of ``sum_{c=1}^{cap} x**c / c!`` for large x, via log-sum-exp."""
    logs = []
    c = 1
    lx = math.log(x)
    while c <= cap:
        logs.append(c * lx - math.lgamma(c + 1))
        if c > x and logs[-1] < max(logs) - 45.0:
            break
        c += 1
    top = max(logs)
    return top + math.log(math.fsum(math.exp(l - top) for l in logs))


def simple_conditional_bound(x: float, s: int, cap: float = math.inf) -> tuple[Bound, Bound]:
    """``(2^-s sum_{c=1}^{cap} x^c/c!, 2^-s (e^x - 1))``.

    For moderate x both are sums of the same nonnegative series, the second
    running until the terms vanish, so the first never exceeds the second
    even after rounding.
    """
    if x < 0:
        raise DomainError("x must be nonnegative")
    if cap < 1:
        raise DomainError("cap must be >= 1")
    if s < 2:
        raise DomainError("edge size must be >= 2")
    if x == 0.0:
        zero = Bound(-math.inf, 0.0)
        return zero, zero
    if x > 700.0:
        lt = _log_series(x, cap) - s * LN2
        le = x + math.log1p(-math.exp(-x)) - s * LN2
        return Bound.from_log(lt), Bound.from_log(le)
    full = _series_terms(x, math.inf)
    head = full[: int(min(cap, len(full)))]
    truncated = math.ldexp(math.fsum(head), -s)
    exponential = math.ldexp(math.fsum(full), -s)
    return Bound(_log(truncated), truncated), Bound(_log(exponential), exponential)


def simple_edge_bound(k: int, q: float, s: int, alphas: AlphaParams = AlphaParams()) -> Bound:
    """``2^-s (alpha_B q)^(alpha_C q) / (alpha_C k)``."""
    if k < 2:
        raise DomainError("k must be >= 2")
    if alphas.b * q <= 1.0:
        raise DomainError("requires alpha_B * q > 1")
    lv = -s * LN2 + alphas.c * q * math.log(alphas.b * q) - math.log(alphas.c * k)
    return Bound.from_log(lv)


def target_bound(q: float, s: int) -> Bound:
    """Per-edge target ``1 / (3 q 2^(s-1))`` that makes the expected number of
    monochromatic edges at most 2/3."""
    return Bound.from_log(-math.log(3.0 * q) - (s - 1) * LN2)


def _log_cosh_minus_one(t: float) -> float:
    # cosh(t) - 1 = 2 sinh(t/2)^2
    if t == 0.0:
        return -math.inf
    h = abs(t) / 2.0
    if h < 20.0:
        return LN2 + 2.0 * math.log(math.sinh(h))
    return LN2 + 2.0 * (h - LN2 + math.log1p(-math.exp(-2.0 * h)))


@dataclass(frozen=True)
class ImprovedBound:
    cosh_form: Bound
    exp_form: Bound
    q_threshold: float
    within_threshold: bool
    target_met: bool


def improved_edge_bound(
    k: int, q: float, s: int, alphas: AlphaParams = AlphaParams()
) -> ImprovedBound:
    """Cosh-form bound ``(cosh(sqrt(2 aD aC) q) - 1) / (aC k 2^s)``, its
    exponential relaxation, and the sufficient condition
    ``q <= 0.9 ln(k) / sqrt(2 aD aC)``."""
    if k < 2:
        raise DomainError("k must be >= 2")
    if q < 0:
        raise DomainError("q must be nonnegative")
    root = math.sqrt(2.0 * alphas.d * alphas.c)
    scale = -math.log(alphas.c * k) - s * LN2
    cosh_form = Bound.from_log(_log_cosh_minus_one(root * q) + scale)
    exp_form = Bound.from_log(root * q + scale)
    threshold = 0.9 * math.log(k) / root
    # 3 q exp(root q) / (2 aC k) <= 1
    met = q == 0 or math.log(3.0 * q) + root * q - math.log(2.0 * alphas.c * k) <= 0.0
    return ImprovedBound(cosh_form, exp_form, threshold, q <= threshold, met)


def greedy_failure_bound(k: int, K: int, q: float) -> Bound:
    """``p (1+p)^(K-k) q^2 + 2 (1-p)^k q`` with ``p = ln(4q)/k`` clamped."""
    if k < 2 or K < k:
        raise DomainError("requires K >= k >= 2")
    if q <= 0:
        raise DomainError("q must be positive")
    p = greedy_p(k, q)
    conflict = _log(p) + (K - k) * math.log1p(p) + 2.0 * math.log(q)
    light_heavy = LN2 + k * _log(1.0 - p) + math.log(q)
    return Bound.from_log(float(_logaddexp(conflict, light_heavy)))


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    top = max(a, b)
    return top + math.log1p(math.exp(-abs(a - b)))


@dataclass(frozen=True)
class UniformBound:
    bound: Bound
    epsilon: float
    q_threshold: float


def uniform_edge_bound(k: int, q: float, alpha_b: float) -> UniformBound:
    """``2^-k q^(1 + alpha_B) / k`` and the sufficient threshold
    ``q <= (k eps / (1 + eps))^(1/(3 + eps))`` with ``eps = alpha_B - 1``."""
    if k < 2:
        raise DomainError("k must be >= 2")
    if q <= 0:
        raise DomainError("q must be positive")
    if alpha_b <= 1:
        raise DomainError("alpha_B must exceed 1")
    eps = alpha_b - 1.0
    lv = -k * LN2 + (1.0 + alpha_b) * math.log(q) - math.log(k)
    threshold = math.exp((math.log(k) + math.log(eps) - math.log1p(eps)) / (3.0 + eps))
    return UniformBound(Bound.from_log(lv), eps, threshold)
