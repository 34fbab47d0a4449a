"""The ellipsoid-into-ball capacity function and its sampling.

For rational x >= 1, the infimal ball size admitting the ellipsoid E(1, x)
equals the packing capacity of the ball configuration given by the weight
expansion of E(1, x); the squares of the weights sum to x, so the volume
lower bound sqrt(x) is built in.  The function is an infinite staircase
below the accumulation point (7 + 3*sqrt(5))/2 and follows the volume
curve far beyond it; samples keep their witness tuple so each step is
attributable to a specific obstruction class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import InputError, RationalLike, as_rational
from .packing import BallConfig, CapacityResult, capacity_auto
from .toric import ellipsoid_weights


@dataclass(frozen=True)
class StaircaseSample:
    x: Fraction
    value: CapacityResult


def ms_value(x: RationalLike, d_budget: int = 40) -> CapacityResult:
    """Capacity of the weight-expansion ball configuration of E(1, x)."""
    x = as_rational(x)
    if x < 1:
        raise InputError("x must be >= 1")
    weights = ellipsoid_weights(1, x).weights
    return capacity_auto(BallConfig.make(weights), d_budget)


def sample_staircase(
    x_from: RationalLike,
    x_to: RationalLike,
    step: RationalLike,
    d_budget: int = 40,
) -> list[StaircaseSample]:
    """One sample per grid point x_from, x_from + step, ..., up to x_to."""
    x_from, x_to, step = as_rational(x_from), as_rational(x_to), as_rational(step)
    if x_from < 1 or x_to < x_from:
        raise InputError("need 1 <= x_from <= x_to")
    if step <= 0:
        raise InputError("step must be positive")
    samples = []
    x = x_from
    while x <= x_to:
        samples.append(StaircaseSample(x, ms_value(x, d_budget)))
        x += step
    return samples
