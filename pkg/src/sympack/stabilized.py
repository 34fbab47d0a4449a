"""Stabilized embedding decisions.

Crossing source and target with a fixed closed symplectic surface of genus
g and area L (or, for the two-ball problem, any closed symplectically
aspherical manifold) does not change the answer, so every operation here
delegates to the four-dimensional engines and annotates the result with
the stabilization basis label and the fiber parameters it ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import HypothesisError, InputError, RationalLike, as_rational
from .ech import ech_dominates
from .packing import BallConfig, CapacityResult, decide_packing
from .toric import ConcaveDomain, ConvexDomain, decide_concave_into_convex

BASIS_PACKING = "Theorem A"
BASIS_PACKING_GENUS_ZERO = "Section 4.2"
BASIS_TWO_BALL = "Theorem B"
BASIS_TORIC = "Theorem D"


@dataclass(frozen=True)
class StabilizedDecision:
    decision: str  # "yes" | "no" | "undecided" | "conjecturally-yes"
    basis: str
    genus: Optional[int] = None
    area: Optional[Fraction] = None
    fiber_independent: bool = True
    capacity: Optional[CapacityResult] = None
    ech_consistent: Optional[bool] = None


def _check_fiber(g: int, L: RationalLike) -> Fraction:
    if g < 0:
        raise InputError("genus must be a nonnegative integer")
    area = as_rational(L)
    if area <= 0:
        raise InputError("fiber area must be positive")
    return area


def decide_stabilized_packing(
    sizes: BallConfig,
    target: RationalLike,
    g: int,
    L: RationalLike,
    convention: str = "open",
    d_budget: int = 40,
) -> StabilizedDecision:
    """Ball packing crossed with a genus-g surface of area L.

    The verdict equals the four-dimensional one for every (g, L); genus
    zero carries its own basis label since that case rests on a direct
    construction rather than the general stabilization statement.
    """
    area = _check_fiber(g, L)
    verdict = decide_packing(sizes, target, convention, d_budget)
    basis = BASIS_PACKING if g >= 1 else BASIS_PACKING_GENUS_ZERO
    return StabilizedDecision(
        verdict.decision, basis, genus=g, area=area, capacity=verdict.capacity
    )


def decide_stabilized_two_ball(
    n: int,
    r1: RationalLike,
    r2: RationalLike,
    target: RationalLike,
    aspherical: bool = True,
    d_budget: int = 40,
) -> StabilizedDecision:
    """Two balls in dimension 2n crossed with an aspherical closed factor.

    The pairwise bound r1 + r2 < target is necessary in every dimension;
    it is sufficient for n = 2 (exact engine) and for equal sizes in any
    dimension (explicit packings), and conjecturally sufficient otherwise.
    """
    if not aspherical:
        raise HypothesisError(
            "the two-ball stabilization requires the closed factor to be "
            "symplectically aspherical (the symplectic form must vanish on "
            "spheres); pass aspherical=True to assert it"
        )
    if n < 2:
        raise InputError("half-dimension n must be >= 2")
    a, b, R = as_rational(r1), as_rational(r2), as_rational(target)
    if a <= 0 or b <= 0 or R <= 0:
        raise InputError("sizes must be positive")
    if a + b >= R:
        return StabilizedDecision("no", BASIS_TWO_BALL)
    if n == 2:
        verdict = decide_packing(BallConfig.make([a, b]), R, "open", d_budget)
        return StabilizedDecision(verdict.decision, BASIS_TWO_BALL, capacity=verdict.capacity)
    if a == b:
        return StabilizedDecision("yes", BASIS_TWO_BALL)
    return StabilizedDecision("conjecturally-yes", BASIS_TWO_BALL)


def decide_stabilized_toric(
    source: ConcaveDomain,
    target: ConvexDomain,
    g: int,
    L: RationalLike,
    convention: str = "open",
    d_budget: int = 40,
    ech_kmax: int = 50,
) -> StabilizedDecision:
    """Concave-into-convex crossed with a genus-g surface of area L.

    Independent of (g, L); the result also reports the prefix dominance of
    the capacity sequences as a cross-check (a yes must dominate).
    """
    area = _check_fiber(g, L)
    verdict = decide_concave_into_convex(source, target, convention, d_budget)
    dominance = ech_dominates(source, target, ech_kmax) if ech_kmax >= 1 else None
    return StabilizedDecision(
        verdict.decision,
        BASIS_TORIC,
        genus=g,
        area=area,
        capacity=verdict.capacity,
        ech_consistent=dominance,
    )
