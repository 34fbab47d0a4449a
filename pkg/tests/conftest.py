"""Shared generators for randomized tests.

Everything is seeded explicitly so failures reproduce; the acceptance
suite documents its seeds in the test bodies.
"""

from __future__ import annotations

import random
from fractions import Fraction

from sympack import BallConfig, ConcaveDomain, ConvexDomain


def random_rational(rng: random.Random, max_den: int = 8, lo=Fraction(1, 4), hi=Fraction(2)) -> Fraction:
    """Rational in [lo, hi] with denominator <= max_den."""
    den = rng.randint(1, max_den)
    lo_num = -((-lo * den).__floor__())  # ceil(lo*den)
    hi_num = (hi * den).__floor__()
    return Fraction(rng.randint(int(lo_num), int(hi_num)), den)


def random_config(rng: random.Random, k_max: int = 5, max_den: int = 8) -> BallConfig:
    k = rng.randint(1, k_max)
    return BallConfig.make(random_rational(rng, max_den) for _ in range(k))


def random_concave(rng: random.Random, max_den: int = 12, max_segments: int = 4) -> ConcaveDomain:
    """Random convex decreasing chain: ascending negative slopes, positive widths."""
    segs = rng.randint(1, max_segments)
    slopes = sorted(
        {-Fraction(rng.randint(1, 6 * max_den), rng.randint(1, max_den)) for _ in range(segs)}
    )
    widths = [Fraction(rng.randint(1, 3 * max_den), rng.randint(1, max_den)) / 3 for _ in slopes]
    b = -sum(s * w for s, w in zip(slopes, widths))
    points = [(Fraction(0), b)]
    x, y = Fraction(0), b
    for s, w in zip(slopes, widths):
        x, y = x + w, y + s * w
        points.append((x, y))
    return ConcaveDomain.make(points)


def random_convex(rng: random.Random, max_den: int = 12, max_segments: int = 4) -> ConvexDomain:
    """Random concave upper chain; sometimes with a vertical last edge."""
    segs = rng.randint(1, max_segments)
    slopes = sorted(
        {Fraction(rng.randint(-4 * max_den, 2 * max_den), rng.randint(1, max_den)) for _ in range(segs)},
        reverse=True,
    )
    if slopes[-1] >= 0:
        slopes.append(-Fraction(rng.randint(1, 3 * max_den), rng.randint(1, max_den)))
    widths = [Fraction(rng.randint(1, 3 * max_den), rng.randint(1, max_den)) / 3 for _ in slopes]
    drop = sum(s * w for s, w in zip(slopes, widths))
    if drop >= 0:  # widen the final (negative) segment until the chain descends
        widths[-1] += (drop + 1) / (-slopes[-1])
        drop = sum(s * w for s, w in zip(slopes, widths))
    b = -drop
    points = [(Fraction(0), b)]
    x, y = Fraction(0), b
    for s, w in zip(slopes, widths):
        x, y = x + w, y + s * w
        points.append((x, y))
    if rng.random() < 0.3:
        lift = Fraction(rng.randint(1, max_den), max_den)
        points = [(px, py + lift) for px, py in points]
        points.append((points[-1][0], Fraction(0)))
    return ConvexDomain.make(points)
