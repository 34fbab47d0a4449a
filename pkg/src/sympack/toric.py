"""Rational toric moment regions, weight expansions, and the
concave-into-convex embedding decision.

A concave region is the part of the first quadrant under the graph of a
convex, strictly decreasing piecewise-linear function from (0, b) to
(a, 0).  A convex region is bounded by the axes and a concave upper
boundary from (0, b) to (a, 0) (a horizontal first edge and a vertical
last edge are allowed).  All vertices are rational.

The weight expansion peels the largest standard triangle
T(t) = {x, y >= 0, x + y <= t} out of a concave region, maps the at most
two residual corners back to standard position by unit-determinant shears,
and recurses; the expansion of a convex region peels the circumscribed
triangle T(head) instead and expands the complementary corners.  The area
identities

    concave:  sum w_i^2 = 2 area,      convex:  head^2 - sum w_i^2 = 2 area

are asserted after every expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    DomainValidationError,
    InputError,
    RationalLike,
    ResourceBudgetError,
    as_rational,
)
from .packing import BallConfig, PackingDecision, decide_packing

Point = tuple[Fraction, Fraction]
Chain = list[Point]

_MAX_PEELS = 200_000


def _as_point(p) -> Point:
    if len(p) != 2:
        raise DomainValidationError("non_rational", f"vertex {p!r} is not a pair")
    try:
        return (as_rational(p[0]), as_rational(p[1]))
    except InputError:
        raise DomainValidationError("non_rational", f"vertex {p!r} has a non-rational entry") from None


def _polygon_area(chain: Sequence[Point]) -> Fraction:
    """Area of the region bounded by the axes and the chain (shoelace)."""
    poly = [(Fraction(0), Fraction(0))] + list(chain)
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        total += x0 * y1 - x1 * y0
    return abs(total) / 2


def _level(p: Point) -> Fraction:
    return p[0] + p[1]


def _cross_level(p: Point, q: Point, t: Fraction) -> Point:
    """Point on segment pq with x + y = t (levels at p, q must differ)."""
    lp, lq = _level(p), _level(q)
    s = (t - lp) / (lq - lp)
    return (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))


@dataclass(frozen=True)
class ConcaveDomain:
    """Region under a convex decreasing rational PL graph from (0,b) to (a,0)."""

    vertices: tuple[Point, ...]

    @classmethod
    def make(cls, points: Iterable[Sequence[RationalLike]]) -> "ConcaveDomain":
        vs = [_as_point(p) for p in points]
        if len(vs) < 2:
            raise DomainValidationError("bad_endpoints", "need at least two vertices")
        if vs[0][0] != 0 or vs[0][1] <= 0:
            raise DomainValidationError("bad_endpoints", "first vertex must be (0, b) with b > 0")
        prev_slope = None
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x1 <= x0:
                raise DomainValidationError("wrong_orientation", "x must be strictly increasing")
            if y1 >= y0:
                raise DomainValidationError("wrong_orientation", "y must be strictly decreasing")
            slope = (y1 - y0) / (x1 - x0)
            if prev_slope is not None and slope < prev_slope:
                raise DomainValidationError("non_convex_boundary", "slopes must be nondecreasing")
            prev_slope = slope
        if vs[-1][1] != 0 or vs[-1][0] <= 0:
            raise DomainValidationError("bad_endpoints", "last vertex must be (a, 0) with a > 0")
        return cls(tuple(vs))

    @classmethod
    def triangle(cls, a: RationalLike, b: RationalLike) -> "ConcaveDomain":
        a, b = as_rational(a), as_rational(b)
        return cls.make([(0, b), (a, 0)])

    @property
    def area(self) -> Fraction:
        return _polygon_area(self.vertices)

    def scale(self, factor: RationalLike) -> "ConcaveDomain":
        f = as_rational(factor)
        if f <= 0:
            raise InputError("scale factor must be positive")
        return ConcaveDomain.make([(x * f, y * f) for x, y in self.vertices])


@dataclass(frozen=True)
class ConvexDomain:
    """Convex region against the axes with concave upper boundary (0,b)..(a,0)."""

    vertices: tuple[Point, ...]

    @classmethod
    def make(cls, points: Iterable[Sequence[RationalLike]]) -> "ConvexDomain":
        vs = [_as_point(p) for p in points]
        if len(vs) < 2:
            raise DomainValidationError("bad_endpoints", "need at least two vertices")
        if vs[0][0] != 0 or vs[0][1] <= 0:
            raise DomainValidationError("bad_endpoints", "first vertex must be (0, b) with b > 0")
        if vs[-1][1] != 0 or vs[-1][0] <= 0:
            raise DomainValidationError("bad_endpoints", "last vertex must be (a, 0) with a > 0")
        for x, y in vs[1:-1]:
            if y <= 0:
                raise DomainValidationError("wrong_orientation", "interior vertices must have y > 0")
        prev_slope: Fraction | None = None
        for i, ((x0, y0), (x1, y1)) in enumerate(zip(vs, vs[1:])):
            if x1 < x0 or (x1 == x0 and y1 >= y0):
                raise DomainValidationError("wrong_orientation", "x must be nondecreasing")
            if x1 == x0:
                if i != len(vs) - 2:
                    raise DomainValidationError(
                        "non_convex_boundary", "vertical edge allowed only as the last edge"
                    )
                continue  # final vertical drop: slope -infinity, below everything
            slope = (y1 - y0) / (x1 - x0)
            if prev_slope is not None and slope > prev_slope:
                raise DomainValidationError("non_convex_boundary", "slopes must be nonincreasing")
            prev_slope = slope
        return cls(tuple(vs))

    @classmethod
    def triangle(cls, a: RationalLike, b: RationalLike) -> "ConvexDomain":
        a, b = as_rational(a), as_rational(b)
        return cls.make([(0, b), (a, 0)])

    @classmethod
    def rectangle(cls, a: RationalLike, b: RationalLike) -> "ConvexDomain":
        a, b = as_rational(a), as_rational(b)
        return cls.make([(0, b), (a, b), (a, 0)])

    @property
    def area(self) -> Fraction:
        return _polygon_area(self.vertices)

    def scale(self, factor: RationalLike) -> "ConvexDomain":
        f = as_rational(factor)
        if f <= 0:
            raise InputError("scale factor must be positive")
        return ConvexDomain.make([(x * f, y * f) for x, y in self.vertices])

    @property
    def head(self) -> Fraction:
        return max(_level(v) for v in self.vertices)


@dataclass(frozen=True)
class WeightData:
    """Ball decomposition data: optional head plus a weight multiset."""

    head: Optional[Fraction]
    weights: tuple[Fraction, ...]

    @classmethod
    def make(cls, head: Optional[Fraction], weights: Iterable[Fraction]) -> "WeightData":
        return cls(head, tuple(sorted(weights, reverse=True)))

    def square_sum(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))


def _left_residue(chain: Chain, t: Fraction) -> Chain | None:
    """Portion of a concave chain with level above t near the y-axis,
    sheared by (x, y) -> (x, x + y - t) back to standard position."""
    if _level(chain[0]) <= t:
        return None
    kept: Chain = []
    for i, v in enumerate(chain):
        if _level(v) > t:
            kept.append(v)
        else:
            cross = v if _level(v) == t else _cross_level(chain[i - 1], v, t)
            kept.append(cross)
            break
    return [(x, x + y - t) for x, y in kept]


def _right_residue(chain: Chain, t: Fraction) -> Chain | None:
    """Portion with level above t near the x-axis, sheared by
    (x, y) -> (x + y - t, y)."""
    if _level(chain[-1]) <= t:
        return None
    kept: Chain = []
    for i in range(len(chain) - 1, -1, -1):
        v = chain[i]
        if _level(v) > t:
            kept.append(v)
        else:
            cross = v if _level(v) == t else _cross_level(v, chain[i + 1], t)
            kept.append(cross)
            break
    kept.reverse()
    return [(x + y - t, y) for x, y in kept]


def _expand_concave_chain(chain: Chain) -> list[Fraction]:
    """Weight expansion by triangle peeling; terminates for rational chains."""
    weights: list[Fraction] = []
    stack: list[Chain] = [chain]
    steps = 0
    while stack:
        steps += 1
        if steps > _MAX_PEELS:
            raise ResourceBudgetError("weight expansion exceeded the peel budget")
        cur = stack.pop()
        t = min(_level(v) for v in cur)
        assert t > 0
        weights.append(t)
        left = _left_residue(cur, t)
        right = _right_residue(cur, t)
        if left is not None:
            stack.append(left)
        if right is not None:
            stack.append(right)
    return weights


def weight_sequence(domain: ConcaveDomain) -> WeightData:
    """Decomposition of a concave region into standard triangles (balls)."""
    weights = _expand_concave_chain(list(domain.vertices))
    data = WeightData.make(None, weights)
    assert data.square_sum() == 2 * domain.area, "weight area identity failed"
    return data


def _reflect(chain: Chain) -> Chain:
    return [(y, x) for x, y in reversed(chain)]


def _upper_corner(chain: Chain, h: Fraction) -> Chain | None:
    """Corner of T(h) above the chain near the y-axis, normalized by
    (x, y) -> (x, h - x - y) to a concave chain."""
    if _level(chain[0]) >= h:
        return None
    kept: Chain = []
    for i, v in enumerate(chain):
        if _level(v) < h:
            kept.append(v)
        else:
            cross = v if _level(v) == h else _cross_level(chain[i - 1], v, h)
            kept.append(cross)
            break
    return [(x, h - x - y) for x, y in kept]


def negative_weight_sequence(domain: ConvexDomain) -> WeightData:
    """Head (circumscribed triangle size) and the expansion of T(head) - Omega."""
    h = domain.head
    weights: list[Fraction] = []
    left = _upper_corner(list(domain.vertices), h)
    if left is not None:
        weights.extend(_expand_concave_chain(left))
    right = _upper_corner(_reflect(list(domain.vertices)), h)
    if right is not None:
        weights.extend(_expand_concave_chain(right))
    data = WeightData.make(h, weights)
    assert h * h - data.square_sum() == 2 * domain.area, "negative weight identity failed"
    return data


def ellipsoid_weights(a: RationalLike, b: RationalLike) -> WeightData:
    """Weight expansion of the ellipsoid with area parameters (a, b), by the
    continued-fraction algorithm: repeatedly subtract min(a, b) copies."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise InputError("ellipsoid parameters must be positive")
    weights: list[Fraction] = []
    lo, hi = min(a, b), max(a, b)
    while lo > 0:
        q = hi // lo
        weights.extend([lo] * int(q))
        lo, hi = hi - q * lo, lo
    return WeightData.make(None, weights)


def decide_concave_into_convex(
    source: ConcaveDomain,
    target: ConvexDomain,
    convention: str = "open",
    d_budget: int = 40,
    engine: str = "auto",
) -> PackingDecision:
    """Decide the toric embedding through the equivalent ball packing.

    The ball configuration is the source's weights joined with the target's
    negative weights, packed into the ball of size head(target).  The
    convention is forwarded to the packing decision: "open" keeps every
    inequality strict (closed balls into the open ball); "closed" uses the
    non-strict variant, which by the scale-to-the-limit argument matches
    interior-into-interior embeddings at boundary cases.
    """
    src = weight_sequence(source)
    tgt = negative_weight_sequence(target)
    config = BallConfig.make(list(src.weights) + list(tgt.weights))
    assert tgt.head is not None
    return decide_packing(config, tgt.head, convention, d_budget, engine)


def decide_concave_into_convex_refined(
    outer_sources: Sequence[ConcaveDomain],
    inner_sources: Sequence[ConcaveDomain],
    target: ConvexDomain,
    convention: str = "open",
    d_budget: int = 40,
) -> str:
    """Approximation ladder for sources only available as rational sandwiches.

    ``outer_sources`` must contain the true source, ``inner_sources`` must be
    contained in it.  A yes for any outer approximation, or a no for any
    inner approximation, decides the problem; otherwise undecided.
    """
    for outer, inner in zip(outer_sources, inner_sources):
        if decide_concave_into_convex(outer, target, convention, d_budget).decision == "yes":
            return "yes"
        if decide_concave_into_convex(inner, target, convention, d_budget).decision == "no":
            return "no"
    return "undecided"
