"""Four-dimensional ball packing capacities with certified termination.

The obstruction family consists of all tuples (d; m_1, ..., m_k) of
nonnegative integers, not all zero, with sum(m_i^2 + m_i) <= d^2 + 3d.  A
collection of balls of areas R_1 >= ... >= R_k embeds into the open ball of
size R exactly when sum m_i R_i < d R for every family member, so the
packing capacity is

    c(R_1..R_k) = sup over the family of (sum m_i R_i) / d,

which is never below the volume bound sqrt(sum R_i^2).  The engine
searches degrees d <= d_budget exactly (pseudo-polynomial dynamic program)
and certifies the unsearched tail, when possible, with three sound bounds:

* signed relaxation: the real maximum of sum m_i R_i subject to
  sum m_i(m_i+1) <= B over unconstrained-sign m is
  sqrt(V(B + k/4)) - (sum R_i)/2 with V = sum R_i^2;
* chained Cauchy-Schwarz: W <= sqrt((B - W/Rmax) V) since
  sum m_i >= W/Rmax, so W is at most the positive root of
  x^2/V + x/Rmax = B;
* volume regime: if sqrt(V) >= 3 Rmax then every family member satisfies
  W <= d sqrt(V) (strictly when the inequality is strict), pinning the
  capacity to sqrt(V) exactly.

The first two are sharpened by lattice rounding: per-degree maxima live in
(1/L)Z, so the tail is certified whenever the bound stays below
best*d + 1/L' for all d past the budget, an exact quadratic positivity
test over integers.  Configurations are normalized to a primitive integer
size vector internally, which makes every certificate scale-invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core import (
    InputError,
    QuadraticValue,
    RationalLike,
    ResourceBudgetError,
    as_rational,
    qv_max,
    qv_min,
)
from .exceptional import ObstructionTuple, exceptional_vectors_of_degree

_ENGINE_ALIASES = {
    "full-tuples": "full",
    "full": "full",
    "exceptional-only": "exceptional",
    "exceptional": "exceptional",
}


@dataclass(frozen=True)
class BallConfig:
    """A nonempty collection of ball areas, sorted nonincreasing."""

    sizes: tuple[Fraction, ...]

    @classmethod
    def make(cls, values: Iterable[RationalLike]) -> "BallConfig":
        sizes = tuple(sorted((as_rational(v) for v in values), reverse=True))
        if not sizes:
            raise InputError("ball configuration must be nonempty")
        if sizes[-1] <= 0:
            raise InputError("ball sizes must be strictly positive")
        return cls(sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def square_sum(self) -> Fraction:
        return sum((s * s for s in self.sizes), Fraction(0))

    def scale(self, factor: RationalLike) -> "BallConfig":
        f = as_rational(factor)
        if f <= 0:
            raise InputError("scale factor must be positive")
        return BallConfig.make(s * f for s in self.sizes)


@dataclass(frozen=True)
class CapacityResult:
    """Exact value or certified interval, with witness and attainment flag."""

    lower: QuadraticValue
    upper: QuadraticValue
    attained: str  # "yes" | "no" | "unknown"
    witness: Optional[ObstructionTuple]
    degree_searched: int

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> QuadraticValue:
        if not self.is_exact:
            raise InputError("capacity is an interval, not an exact value")
        return self.lower


@dataclass(frozen=True)
class PackingDecision:
    decision: str  # "yes" | "no" | "undecided"
    capacity: CapacityResult


@dataclass(frozen=True)
class EqualBallFraction:
    """Interval for the supremal filled volume fraction of k equal balls."""

    lower: Fraction
    upper: Fraction
    capacity: CapacityResult

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper


def _primitive(config: BallConfig) -> tuple[tuple[int, ...], Fraction]:
    """Integer weights w (gcd 1, nonincreasing) and scale s with sizes = s*w."""
    lcm = 1
    for s in config.sizes:
        lcm = lcm * s.denominator // math.gcd(lcm, s.denominator)
    ints = [int(s * lcm) for s in config.sizes]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints), Fraction(g, lcm)


def _budget(d: int) -> int:
    return d * d + 3 * d


def _max_value_at_degree(weights: tuple[int, ...], d: int) -> int:
    """Exact max of sum m_i w_i over the degree-d budget, by knapsack DP.

    Feasible multiplicities satisfy m_i <= d, since (d+1)(d+2) > d(d+3).
    """
    B = _budget(d)
    if d * sum(weights) < 2**60:
        dp = np.zeros(B + 1, dtype=np.int64)
        for w in weights:
            new = dp.copy()
            for m in range(1, d + 1):
                c = m * (m + 1)
                if c > B:
                    break
                np.maximum(new[c:], dp[: B + 1 - c] + m * w, out=new[c:])
            dp = new
        return int(dp[B])
    dp = [0] * (B + 1)
    for w in weights:
        new = dp.copy()
        for m in range(1, d + 1):
            c = m * (m + 1)
            if c > B:
                break
            mw = m * w
            for b in range(c, B + 1):
                v = dp[b - c] + mw
                if v > new[b]:
                    new[b] = v
        dp = new
    return dp[B]


def _witness_at_degree(weights: tuple[int, ...], d: int, target: int) -> tuple[int, ...]:
    """Lexicographically smallest nonincreasing m achieving the degree max.

    An optimal assignment can always be taken nonincreasing along the
    sorted weights (swapping any inversion never lowers the value), so the
    depth-first search below ranges over nonincreasing assignments only and
    returns the first completed one, which is the lex-min.
    """
    B = _budget(d)
    k = len(weights)
    suffix = [np.zeros(B + 1, dtype=np.int64)]
    for w in reversed(weights):
        prev = suffix[0]
        new = prev.copy()
        for m in range(1, d + 1):
            c = m * (m + 1)
            if c > B:
                break
            np.maximum(new[c:], prev[: B + 1 - c] + m * w, out=new[c:])
        suffix.insert(0, new)

    assignment: list[int] = []

    def descend(i: int, budget: int, need: int, cap: int) -> bool:
        if i == k:
            return need <= 0
        w = weights[i]
        for m in range(0, cap + 1):
            c = m * (m + 1)
            if c > budget:
                break
            if m * w + int(suffix[i + 1][budget - c]) >= need:
                assignment.append(m)
                if descend(i + 1, budget - c, need - m * w, m):
                    return True
                assignment.pop()
        return False

    ok = descend(0, B, target, d)
    assert ok, "witness reconstruction must succeed at the DP optimum"
    return tuple(assignment)


def per_degree_max(d: int, config: BallConfig) -> tuple[Fraction, ObstructionTuple]:
    """Maximum of sum m_i R_i over the degree-d budget, with its witness."""
    if d < 1:
        raise InputError("degree must be >= 1")
    weights, scale = _primitive(config)
    v = _max_value_at_degree(weights, d)
    m = _witness_at_degree(weights, d, v)
    return v * scale, ObstructionTuple.make(d, m)


def _positive_on_integer_ray(A: Fraction, B: Fraction, C: Fraction, d0: int) -> bool:
    """Whether A d^2 + B d + C > 0 for every integer d >= d0 (exact)."""

    def q(dv: int) -> Fraction:
        return (A * dv + B) * dv + C

    if A < 0:
        return False
    if A == 0:
        if B < 0:
            return False
        if B == 0:
            return C > 0
        return q(d0) > 0
    if q(d0) <= 0:
        return False
    vertex = -B / (2 * A)
    if vertex <= d0:
        return True
    lo = math.floor(vertex)
    return q(max(d0, lo)) > 0 and q(max(d0, lo + 1)) > 0


def _full_tail_certified(
    best: Fraction, Vp: int, wmax: int, wsum: int, k: int, d0: int
) -> bool:
    """Certify max over d >= d0 of the full-family degree max <= best*d.

    Degree maxima are integers here (primitive weights), so it suffices
    that a sound real bound stays below best*d + 1/den(best).
    """
    if best * best < Vp:
        return False
    eps = Fraction(1, best.denominator)
    # signed relaxation: sqrt(Vp(d^2+3d+k/4)) - wsum/2 < best*d + eps
    t = eps + Fraction(wsum, 2)
    if _positive_on_integer_ray(
        best * best - Vp,
        2 * best * t - 3 * Vp,
        t * t - Fraction(k * Vp, 4),
        d0,
    ):
        return True
    # chained Cauchy-Schwarz: positive root of x^2/Vp + x/wmax = d(d+3)
    return _positive_on_integer_ray(
        best * best / Vp - 1,
        2 * best * eps / Vp + Fraction(best.numerator, best.denominator * wmax) - 3,
        eps * eps / Vp + eps / wmax,
        d0,
    )


def _exceptional_tail_certified(best: Fraction, Vp: int, d0: int) -> bool:
    """Certify the exceptional-family tail: values obey sum m_i^2 = d^2 + 1,
    so W <= sqrt((d^2+1) Vp); lattice rounding as in the full tail."""
    if best * best < Vp:
        return False
    eps = Fraction(1, best.denominator)
    return _positive_on_integer_ray(
        best * best - Vp,
        2 * best * eps,
        eps * eps - Vp,
        d0,
    )


def _search_full(
    weights: tuple[int, ...], d_budget: int
) -> tuple[Fraction, int, int]:
    best: Fraction | None = None
    best_d = 1
    best_val = 0
    for d in range(1, d_budget + 1):
        v = _max_value_at_degree(weights, d)
        r = Fraction(v, d)
        if best is None or r > best:
            best, best_d, best_val = r, d, v
    assert best is not None
    return best, best_d, best_val


def _search_exceptional(
    weights: tuple[int, ...], d_budget: int, node_budget: int
) -> tuple[Fraction | None, ObstructionTuple | None]:
    Vp = sum(w * w for w in weights)
    best: Fraction | None = None
    best_vec: ObstructionTuple | None = None
    for d in range(1, d_budget + 1):
        if best is not None:
            # values at degree d are lattice points under sqrt((d^2+1) Vp);
            # skip degrees that provably cannot improve on best, and stop
            # outright once no later degree can either.
            if _exceptional_tail_certified(best, Vp, d):
                break
            eps = Fraction(1, best.denominator)
            bound = best * d + eps
            if bound * bound > (d * d + 1) * Vp:
                continue
        for vec in exceptional_vectors_of_degree(d, node_budget=node_budget):
            val = sum(mi * wi for mi, wi in zip(vec.m, weights))
            r = Fraction(val, d)
            if best is None or r > best:
                best, best_vec = r, vec
            elif r == best and best_vec is not None and vec.d == best_vec.d and vec.m < best_vec.m:
                best_vec = vec
    return best, best_vec


def packing_capacity(
    config: BallConfig,
    d_budget: int,
    engine: str = "full-tuples",
    node_budget: int = 2_000_000,
) -> CapacityResult:
    """Capacity of the open-ball packing problem, exact when certifiable.

    The result is exact (lower == upper) when either a tail certificate
    proves no unsearched degree can beat the searched maximum, or the
    volume-regime certificate applies; otherwise an honest interval is
    returned with attained = "unknown".
    """
    if d_budget < 1:
        raise InputError("d_budget must be >= 1")
    try:
        mode = _ENGINE_ALIASES[engine]
    except KeyError:
        raise InputError(f"unknown engine {engine!r}") from None

    weights, scale = _primitive(config)
    k = len(weights)
    Vp = sum(w * w for w in weights)
    wmax = weights[0]
    wsum = sum(weights)
    V = config.square_sum()
    sqrtV = QuadraticValue.sqrt(V)
    d0 = d_budget + 1

    witness: ObstructionTuple | None = None
    if mode == "full":
        best, best_d, best_val = _search_full(weights, d_budget)
        witness = ObstructionTuple.make(best_d, _witness_at_degree(weights, best_d, best_val))
        tail_ok = _full_tail_certified(best, Vp, wmax, wsum, k, d0)
    else:
        best, witness = _search_exceptional(weights, d_budget, node_budget)
        tail_ok = best is not None and _exceptional_tail_certified(best, Vp, d0)

    best_qv = None if best is None else QuadraticValue.of(best * scale)

    if tail_ok:
        assert best_qv is not None
        return CapacityResult(best_qv, best_qv, "yes", witness, d_budget)

    if Vp >= 9 * wmax * wmax:
        # volume regime: every family value satisfies W <= d*sqrt(V)
        if best_qv is not None and best_qv == sqrtV:
            return CapacityResult(sqrtV, sqrtV, "yes", witness, d_budget)
        if Vp > 9 * wmax * wmax:
            return CapacityResult(sqrtV, sqrtV, "no", None, d_budget)
        return CapacityResult(sqrtV, sqrtV, "unknown", witness, d_budget)

    lower = sqrtV if best_qv is None else qv_max(best_qv, sqrtV)
    if mode == "full":
        tail = QuadraticValue.sqrt(V * Fraction(d_budget + 3, d_budget))
    else:
        n1 = d0 * d0
        tail = QuadraticValue.sqrt(V * Fraction(n1 + 1, n1))
    upper = qv_max(lower, tail)
    return CapacityResult(lower, upper, "unknown", witness, d_budget)


def capacity_auto(
    config: BallConfig, d_budget: int, node_budget: int = 2_000_000
) -> CapacityResult:
    """Full-tuples search first, exceptional-family certification as the
    fallback, interval intersection when neither certifies."""
    full = packing_capacity(config, d_budget, "full-tuples")
    if full.is_exact:
        return full
    try:
        exc = packing_capacity(config, d_budget, "exceptional-only", node_budget)
    except ResourceBudgetError:
        return full
    if exc.is_exact:
        return exc
    lower = qv_max(full.lower, exc.lower)
    upper = qv_min(full.upper, exc.upper)
    return CapacityResult(lower, upper, "unknown", full.witness, d_budget)


def decide_packing(
    config: BallConfig,
    target: RationalLike,
    convention: str = "open",
    d_budget: int = 40,
    engine: str = "auto",
) -> PackingDecision:
    """Decide whether the balls embed into the ball of size ``target``.

    Open-target semantics require the strict inequality for every family
    member; the closed convention swaps one strictness, so equality with an
    attained capacity flips the verdict.  "undecided" means the certified
    interval straddles the target.
    """
    R = as_rational(target)
    if R <= 0:
        raise InputError("target size must be positive")
    conv = {"open": "open", "open-target": "open", "closed": "closed", "closed-target": "closed"}.get(convention)
    if conv is None:
        raise InputError(f"unknown convention {convention!r}")
    if engine == "auto":
        cap = capacity_auto(config, d_budget)
    else:
        cap = packing_capacity(config, d_budget, engine)
    Rq = QuadraticValue.of(R)
    if conv == "open":
        if Rq > cap.upper:
            return PackingDecision("yes", cap)
        if Rq < cap.lower:
            return PackingDecision("no", cap)
        if cap.is_exact and Rq == cap.lower:
            if cap.attained == "yes":
                return PackingDecision("no", cap)
            if cap.attained == "no":
                return PackingDecision("yes", cap)
        return PackingDecision("undecided", cap)
    if Rq >= cap.upper:
        return PackingDecision("yes", cap)
    if Rq < cap.lower:
        return PackingDecision("no", cap)
    return PackingDecision("undecided", cap)


def equal_ball_fraction(k: int, d_budget: int = 30) -> EqualBallFraction:
    """Supremal volume fraction filled by k equal balls, as k / capacity^2."""
    if k < 1:
        raise InputError("k must be >= 1")
    cap = packing_capacity(BallConfig.make([1] * k), d_budget, "full-tuples")
    lo = Fraction(k) / cap.upper.square()
    hi = Fraction(k) / cap.lower.square()
    return EqualBallFraction(lo, hi, cap)
