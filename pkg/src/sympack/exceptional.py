"""Obstruction classes in blowups of the plane.

A tuple (d; m_1 >= ... >= m_k) stands for the class d*A - sum_i m_i*E_i,
where A is the line class and E_i are the exceptional divisors.  The two
derived quantities that matter are the self-intersection d^2 - sum m_i^2
and the anticanonical pairing 3d - sum m_i.  A nonnegative tuple is an
exceptional vector exactly when both Diophantine identities

    d^2 - sum m_i^2 = -1,        3d - sum m_i = 1

hold and the iterated quadratic Cremona move reduces it to the base
pattern (0; -1, 0, ..., 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import InputError, ResourceBudgetError


@dataclass(frozen=True)
class ObstructionTuple:
    """Canonical obstruction tuple: m sorted nonincreasing, no trailing zeros.

    Negative degrees and multiplicities are tolerated (they occur in
    intermediate Cremona reduction states); generators of the obstruction
    family only ever produce nonnegative tuples with d >= 1.
    """

    d: int
    m: tuple[int, ...]

    @classmethod
    def make(cls, d: int, m: Iterable[int]) -> "ObstructionTuple":
        ms = sorted((int(v) for v in m), reverse=True)
        while ms and ms[-1] == 0:
            ms.pop()
        return cls(int(d), tuple(ms))

    @property
    def self_intersection(self) -> int:
        return self.d * self.d - sum(v * v for v in self.m)

    @property
    def anticanonical_pairing(self) -> int:
        return 3 * self.d - sum(self.m)

    def packing_cost(self) -> int:
        """sum_i (m_i^2 + m_i), the left side of the degree budget."""
        return sum(v * v + v for v in self.m)

    def __str__(self):
        return f"({self.d}; {','.join(map(str, self.m))})"


def satisfies_packing_constraint(t: ObstructionTuple) -> bool:
    """Whether sum(m_i^2 + m_i) <= d^2 + 3d."""
    return t.packing_cost() <= t.d * t.d + 3 * t.d


def cremona_transform(t: ObstructionTuple) -> ObstructionTuple:
    """Quadratic Cremona move on the three largest multiplicities.

    (d; m) -> (2d - m1 - m2 - m3; d - m2 - m3, d - m1 - m3, d - m1 - m2, m4, ...),
    re-sorted.  Preserves the self-intersection and anticanonical pairing.
    """
    m = list(t.m) + [0] * max(0, 3 - len(t.m))
    m1, m2, m3 = m[0], m[1], m[2]
    d = t.d
    image = [d - m2 - m3, d - m1 - m3, d - m1 - m2] + m[3:]
    return ObstructionTuple.make(2 * d - m1 - m2 - m3, image)


def _is_base_pattern(t: ObstructionTuple) -> bool:
    # (0; -1, 0, ..., 0) up to order; zeros sort ahead of the -1, so test by content
    return t.d == 0 and sum(1 for v in t.m if v == -1) == 1 and all(v in (0, -1) for v in t.m)


def is_exceptional_vector(t: ObstructionTuple) -> bool:
    """Membership test for the exceptional sphere classes.

    Checks the two Diophantine identities, then reduces by Cremona moves
    while d > 0 and m1 + m2 + m3 > d; every such move strictly decreases d,
    so the loop terminates.  Membership holds iff the terminal state is the
    base pattern (0; -1, 0, ..., 0).
    """
    if t.self_intersection != -1 or t.anticanonical_pairing != 1:
        return False
    cur = t
    guard = t.d + len(t.m) + 3
    while cur.d > 0 and guard >= 0:
        m = list(cur.m) + [0] * max(0, 3 - len(cur.m))
        if m[0] + m[1] + m[2] <= cur.d:
            return False  # Cremona-reduced but not terminal
        nxt = cremona_transform(cur)
        if nxt.d >= cur.d:
            return False  # reduction stalled; not representable
        cur = nxt
        guard -= 1
    return _is_base_pattern(cur)


def exceptional_vectors_of_degree(
    d: int,
    k_max: int | None = None,
    node_budget: int = 2_000_000,
) -> Iterator[ObstructionTuple]:
    """All exceptional vectors of degree d, canonical, descending-lex order.

    Solves sum m = 3d - 1, sum m^2 = d^2 + 1 over nonincreasing positive
    integers with at most k_max parts, then filters by the reduction test.
    """
    if d < 1:
        return
    target_sum = 3 * d - 1
    target_sq = d * d + 1
    budget = [node_budget]

    def parts(prefix: list[int], s: int, q: int, cap: int, left: int | None):
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceBudgetError(
                f"exceptional enumeration exceeded node budget at degree {d}"
                + (f" (k_max={k_max})" if k_max is not None else "")
            )
        if s == 0:
            if q == 0:
                yield prefix.copy()
            return
        if left is not None and left == 0:
            return
        if q < s or q > cap * s:  # parts are in [1, cap]
            return
        top = min(cap, math.isqrt(q), s)
        for p in range(top, 0, -1):
            prefix.append(p)
            yield from parts(prefix, s - p, q - p * p, p, None if left is None else left - 1)
            prefix.pop()

    for m in parts([], target_sum, target_sq, d, k_max):
        cand = ObstructionTuple.make(d, m)
        if len(cand.m) == len(m) and is_exceptional_vector(cand):
            yield cand


def enumerate_exceptional(
    d_max: int,
    k_max: int,
    node_budget: int = 2_000_000,
) -> list[ObstructionTuple]:
    """All exceptional vectors with d <= d_max and at most k_max nonzero
    multiplicities, sorted by (d, lexicographic m)."""
    if d_max < 1 or k_max < 1:
        raise InputError("d_max and k_max must be >= 1")
    out: list[ObstructionTuple] = []
    for d in range(1, d_max + 1):
        found = list(exceptional_vectors_of_degree(d, k_max=k_max, node_budget=node_budget))
        found.sort(key=lambda t: t.m)
        out.extend(found)
    return out
