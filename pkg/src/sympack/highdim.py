"""Index and energy bookkeeping for higher-dimensional ball packings.

A hypothetical genus-g curve in class (d; m_1, ..., m_k) in the k-fold
blowup of projective n-space has real Fredholm index

    (n - 3)(2 - 2g) + 2(n + 1) d - 2(n - 1) sum m_i

and energy d R - sum m_i R_i against ball sizes R_i and target R.  When
every pair satisfies R_i + R_j <= R, no nonnegative-index class has
negative energy: the index cap forces sum m_i <= 2d, so the energy is at
least dR - d R_1 - d R_2 >= 0.  The verifier checks this exhaustively over
the finite family (index >= 0, m_i <= d, d <= d_max).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import HypothesisError, InputError, RationalLike, as_rational
from .exceptional import ObstructionTuple
from .packing import BallConfig, EqualBallFraction, equal_ball_fraction


@dataclass(frozen=True)
class HigherDimProblem:
    """Packing of balls of areas ``sizes`` into the ball of size ``target``
    in dimension 2n."""

    n: int
    sizes: BallConfig
    target: Fraction

    @classmethod
    def make(cls, n: int, sizes, target: RationalLike) -> "HigherDimProblem":
        if n < 2:
            raise InputError("half-dimension n must be >= 2")
        if not isinstance(sizes, BallConfig):
            sizes = BallConfig.make(sizes)
        t = as_rational(target)
        if t <= 0:
            raise InputError("target size must be positive")
        return cls(n, sizes, t)


@dataclass(frozen=True)
class ObstructionScan:
    """Outcome of the no-stronger-obstruction verification."""

    n: int
    d_max: int
    tuples_scanned: int
    violations: tuple[ObstructionTuple, ...]

    @property
    def clean(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: str  # "yes" | "no"
    basis: str  # "conjectural" | "proved necessary"


@dataclass(frozen=True)
class EqualPackingValue:
    value: Fraction
    status: str  # "known" | "conjectural"
    note: Optional[str] = None


def fredholm_index(n: int, g: int, t: ObstructionTuple) -> int:
    if n < 2:
        raise InputError("half-dimension n must be >= 2")
    if g < 0:
        raise InputError("genus must be nonnegative")
    return (n - 3) * (2 - 2 * g) + 2 * (n + 1) * t.d - 2 * (n - 1) * sum(t.m)


def curve_energy(problem: HigherDimProblem, t: ObstructionTuple) -> Fraction:
    if len(t.m) > len(problem.sizes):
        raise InputError("more multiplicities than balls")
    return problem.target * t.d - sum(
        (mi * ri for mi, ri in zip(t.m, problem.sizes.sizes)), Fraction(0)
    )


def _index_sum_cap(n: int, d: int) -> int:
    """Largest sum(m) compatible with nonnegative genus-zero index."""
    return ((n - 3) * 2 + 2 * (n + 1) * d) // (2 * (n - 1))


def _family_count(k: int, s_cap: int, m_cap: int) -> int:
    """#{m in [0, m_cap]^k : sum m <= s_cap} by inclusion-exclusion."""
    total = 0
    for j in range(k + 1):
        rem = s_cap - j * (m_cap + 1)
        if rem < 0:
            break
        total += (-1) ** j * math.comb(k, j) * math.comb(rem + k, k)
    return total


def _max_value(sizes: tuple[Fraction, ...], s_cap: int, m_cap: int) -> Fraction:
    """Max of sum m_i R_i over the box-and-simplex: greedy on sorted sizes."""
    total = Fraction(0)
    remaining = s_cap
    for r in sizes:  # sizes sorted nonincreasing
        take = min(m_cap, remaining)
        if take <= 0:
            break
        total += take * r
        remaining -= take
    return total


def _enumerate_violations(
    problem: HigherDimProblem, d: int, s_cap: int, limit: int
) -> list[ObstructionTuple]:
    sizes = problem.sizes.sizes
    k = len(sizes)
    found: list[ObstructionTuple] = []

    def rec(i: int, remaining: int, value: Fraction, m: list[int]):
        if len(found) >= limit:
            return
        if i == k:
            if value > problem.target * d:
                found.append(ObstructionTuple.make(d, m))
            return
        for mi in range(min(d, remaining) + 1):
            m.append(mi)
            rec(i + 1, remaining - mi, value + mi * sizes[i], m)
            m.pop()

    rec(0, s_cap, Fraction(0), [])
    return found


def verify_no_new_obstruction(
    problem: HigherDimProblem, d_max: int, violation_limit: int = 100
) -> ObstructionScan:
    """Scan every class with d <= d_max, m_i <= d, and nonnegative
    genus-zero index for an energy violation (expected: none).

    Requires the pairwise hypothesis R_i + R_j <= R.  The scan decides
    emptiness of the violation set per degree through the exact dominance
    maximum (the objective is linear over a box-and-simplex, where the
    sorted greedy is optimal) and only materializes tuples if that maximum
    exceeds the available energy.
    """
    if problem.n < 3:
        raise InputError("the scan needs half-dimension n >= 3")
    if d_max < 1:
        raise InputError("d_max must be >= 1")
    sizes = problem.sizes.sizes
    if len(sizes) >= 2 and sizes[0] + sizes[1] > problem.target:
        raise HypothesisError(
            f"pairwise hypothesis fails: {sizes[0]} + {sizes[1]} > {problem.target}"
        )
    k = len(sizes)
    scanned = 0
    violations: list[ObstructionTuple] = []
    for d in range(1, d_max + 1):
        s_cap = min(_index_sum_cap(problem.n, d), k * d)
        scanned += _family_count(k, s_cap, d)
        if _max_value(sizes, s_cap, d) > problem.target * d:
            violations.extend(
                _enumerate_violations(problem, d, s_cap, violation_limit - len(violations))
            )
    return ObstructionScan(problem.n, d_max, scanned, tuple(violations))


def conjectureA_feasible(problem: HigherDimProblem) -> FeasibilityVerdict:
    """Volume plus pairwise test; a yes is conjectural, a no is proved."""
    if problem.n < 3:
        raise InputError("the feasibility test needs half-dimension n >= 3")
    n, R = problem.n, problem.target
    sizes = problem.sizes.sizes
    volume_ok = sum((s**n for s in sizes), Fraction(0)) < R**n
    pairs_ok = len(sizes) < 2 or sizes[0] + sizes[1] < R
    if volume_ok and pairs_ok:
        return FeasibilityVerdict("yes", "conjectural")
    return FeasibilityVerdict("no", "proved necessary")


def _integer_nth_root(k: int, n: int) -> int:
    r = round(k ** (1.0 / n))
    while r**n > k:
        r -= 1
    while (r + 1) ** n <= k:
        r += 1
    return r


def stability_threshold(n: int) -> int:
    """ceil((17/6)^n): beyond this many equal balls the full volume fills."""
    return -((-(17**n)) // 6**n)


def equal_packing_value(n: int, k: int, d_budget: int = 30) -> EqualPackingValue:
    """Supremal filled volume fraction for k equal balls in dimension 2n.

    n = 2 delegates to the exact four-dimensional engine.  For n >= 3 the
    known values are k/2^n for k <= 2^n (explicit packings meet the
    two-ball bound) and 1 for perfect n-th powers or k past the stability
    threshold; in between, full filling is conjectural.
    """
    if n < 2:
        raise InputError("half-dimension n must be >= 2")
    if k < 1:
        raise InputError("k must be >= 1")
    if n == 2:
        frac: EqualBallFraction = equal_ball_fraction(k, d_budget)
        if not frac.is_exact:
            raise InputError(f"four-dimensional engine failed to certify k={k}")
        return EqualPackingValue(frac.lower, "known")
    if k <= 2**n:
        note = None
        if k > 2 ** (n - 1):
            note = (
                f"extends k/2^n through 2^(n-1) < k <= 2^n via the explicit "
                f"2^n-ball packings and the two-ball bound"
            )
        return EqualPackingValue(Fraction(k, 2**n), "known", note)
    threshold = stability_threshold(n)
    if k >= threshold or _integer_nth_root(k, n) ** n == k:
        return EqualPackingValue(Fraction(1), "known")
    return EqualPackingValue(
        Fraction(1),
        "conjectural",
        f"2^n < k < {threshold} and k is not an n-th power",
    )
