"""Combinatorial ECH capacity sequences for toric regions.

Balls and ellipsoids have closed-form sequences: c_k of the ball of size a
is a*d where d indexes the triangular block containing k, and c_k of the
ellipsoid E(a, b) is the (k+1)-st smallest value of {m a + n b} with
multiplicity.  Disjoint unions convolve in the max-plus sense.  A concave
region is the union of the balls of its weight expansion; a convex region
is evaluated against its circumscribed triangle by the index-shift
minimization

    c_k = min over j >= 0 of [ c_{k+j}(B(head)) - u_j ],

where u is the union sequence of the negative weights.  The scan over j is
finite because the terms obey the exact lower bound

    term(j) >= h (sqrt(8(k+j)+9) - 4)/2 - sqrt(2 j W),     W = sum w_i^2,

which is increasing once j >= W(8k+9) / (8(h^2 - W)); scanning stops as
soon as the rounded bound clears the running minimum, so the reported
value is the true infimum.  A caller-supplied shift budget still caps the
scan; exhausting it uncertified raises an undecided error carrying the
best bound found.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .core import InputError, RationalLike, UndecidedError, as_rational
from .toric import ConcaveDomain, ConvexDomain, negative_weight_sequence, weight_sequence

_SHIFT_SAFETY_CAP = 2_000_000


class CapacitySequence:
    """Lazy nondecreasing sequence c_0 = 0 <= c_1 <= ... of rationals.

    Values are memoized; extension happens under a lock (single writer),
    reads of already-computed entries are lock-free.
    """

    def __init__(self, kth: Callable[[int], Fraction]):
        self._kth = kth
        self._values: list[Fraction] = []
        self._lock = threading.Lock()

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise InputError("capacity index must be nonnegative")
        if k >= len(self._values):
            with self._lock:
                while len(self._values) <= k:
                    nxt = self._kth(len(self._values))
                    if self._values and nxt < self._values[-1]:
                        raise InputError("capacity sequence must be nondecreasing")
                    self._values.append(nxt)
        return self._values[k]

    def prefix(self, up_to: int) -> list[Fraction]:
        self[up_to]
        return self._values[: up_to + 1]


def _triangular_index(k: int) -> int:
    """The unique d with d(d+1)/2 <= k < (d+1)(d+2)/2."""
    d = (math.isqrt(8 * k + 1) - 1) // 2
    assert d * (d + 1) // 2 <= k < (d + 1) * (d + 2) // 2
    return d


def ech_ball(a: RationalLike, k: int) -> Fraction:
    a = as_rational(a)
    if a <= 0:
        raise InputError("ball size must be positive")
    if k < 0:
        raise InputError("capacity index must be nonnegative")
    return a * _triangular_index(k)


def ech_ellipsoid(a: RationalLike, b: RationalLike, k: int) -> Fraction:
    """(k+1)-st smallest element, with multiplicity, of {m a + n b : m, n >= 0}."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise InputError("ellipsoid parameters must be positive")
    if k < 0:
        raise InputError("capacity index must be nonnegative")

    def count_under(cap: Fraction) -> int:
        total = 0
        n = 0
        while n * b <= cap:
            total += int((cap - n * b) / a) + 1
            n += 1
        return total

    cap = max(a, b)
    while count_under(cap) < k + 1:
        cap *= 2
    values: list[Fraction] = []
    n = 0
    while n * b <= cap:
        m_max = int((cap - n * b) / a)
        values.extend(m * a + n * b for m in range(m_max + 1))
        n += 1
    values.sort()
    return values[k]


def ball_sequence(a: RationalLike) -> CapacitySequence:
    a = as_rational(a)
    return CapacitySequence(lambda k: ech_ball(a, k))


def ellipsoid_sequence(a: RationalLike, b: RationalLike) -> CapacitySequence:
    a, b = as_rational(a), as_rational(b)
    return CapacitySequence(lambda k: ech_ellipsoid(a, b, k))


def ech_union(A: CapacitySequence, B: CapacitySequence, k: int) -> Fraction:
    """Max-plus convolution of the two prefixes at index k."""
    if k < 0:
        raise InputError("capacity index must be nonnegative")
    pa, pb = A.prefix(k), B.prefix(k)
    return max(pa[i] + pb[k - i] for i in range(k + 1))


def _equal_ball_group_prefix(w_scaled: int, count: int, n: int) -> np.ndarray:
    """Union prefix of ``count`` balls of one size: spread indices evenly.

    The optimum of sum d_i subject to sum T(d_i) <= j over count parts puts
    every part at D or D+1 (the marginal cost of a raise is D+1 and grows).
    """
    out = np.empty(n + 1, dtype=np.int64)
    D = 0
    next_cost = count  # count * (T(D+1) - T(D)) summed = count*(D+1)
    base_cost = 0  # count * T(D)
    for j in range(n + 1):
        while base_cost + next_cost <= j:
            base_cost += next_cost
            D += 1
            next_cost = count * (D + 1)
        upgrades = (j - base_cost) // (D + 1)
        out[j] = w_scaled * (count * D + upgrades)
    return out


def _maxplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    out = np.full(n, np.iinfo(np.int64).min, dtype=np.int64)
    for i in range(n):
        np.maximum(out[i:], a[i] + b[: n - i], out=out[i:])
    return out


def _union_prefix_scaled(weights: Sequence[Fraction], n: int, scale: int) -> np.ndarray:
    """Prefix of the union sequence of balls, in units of 1/scale."""
    groups = Counter(weights)
    acc: np.ndarray | None = None
    for w, count in sorted(groups.items(), reverse=True):
        ws = w * scale
        assert ws.denominator == 1
        arr = _equal_ball_group_prefix(int(ws), count, n)
        acc = arr if acc is None else _maxplus(acc, arr)
    if acc is None:
        acc = np.zeros(n + 1, dtype=np.int64)
    return acc


def _common_scale(values: Sequence[Fraction]) -> int:
    scale = 1
    for v in values:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return scale


def union_of_balls_prefix(weights: Sequence[Fraction], up_to: int) -> list[Fraction]:
    """c_0..c_{up_to} of the disjoint union of balls with the given sizes."""
    scale = _common_scale(weights)
    arr = _union_prefix_scaled(weights, up_to, scale)
    return [Fraction(int(v), scale) for v in arr]


def ech_concave(domain: ConcaveDomain, k: int) -> Fraction:
    """Capacity of the ball union given by the weight expansion."""
    if k < 0:
        raise InputError("capacity index must be nonnegative")
    weights = weight_sequence(domain).weights
    return union_of_balls_prefix(weights, k)[k]


def concave_sequence(domain: ConcaveDomain) -> CapacitySequence:
    weights = weight_sequence(domain).weights
    return CapacitySequence(lambda k: union_of_balls_prefix(weights, k)[k])


class _ConvexEvaluator:
    """Shift-minimization evaluator with shared, lazily grown prefixes."""

    def __init__(self, domain: ConvexDomain, j_budget: Optional[int] = None):
        data = negative_weight_sequence(domain)
        assert data.head is not None
        self.head = data.head
        self.negative = data.weights
        self.j_budget = j_budget
        self.scale = _common_scale([self.head, *self.negative])
        self._head_scaled = int(self.head * self.scale)
        self._w2 = sum(int(w * self.scale) ** 2 for w in self.negative)
        self._degrees = _ball_degree_prefix(255)
        self._u = _union_prefix_scaled(self.negative, 255, self.scale)

    def _ensure(self, deg_len: int, u_len: int) -> None:
        if deg_len >= len(self._degrees):
            self._degrees = _ball_degree_prefix(max(deg_len, 2 * len(self._degrees)))
        if u_len >= len(self._u):
            n = max(u_len, 2 * len(self._u))
            self._u = _union_prefix_scaled(self.negative, n, self.scale)

    def _future_cleared(self, k: int, j1: int, best: int) -> bool:
        """Whether every term at shift >= j1 is certifiably >= best."""
        W = self._w2
        hs = self._head_scaled
        if W > 0 and 8 * j1 * (hs * hs - W) < W * (8 * k + 9):
            return False  # bound not yet monotone from j1 on
        s1 = math.isqrt(8 * (k + j1) + 9)
        s2 = math.isqrt(2 * j1 * W)
        return hs * (s1 - 4) >= 2 * (best + s2 + 1)

    def value(self, k: int) -> Fraction:
        if k < 0:
            raise InputError("capacity index must be nonnegative")
        if not self.negative:
            return self.head * _triangular_index(k)  # bare triangle: no shift helps
        cap = self.j_budget if self.j_budget is not None else _SHIFT_SAFETY_CAP
        best: int | None = None
        j = 0
        while j <= cap:
            self._ensure(k + j, j)
            term = self._head_scaled * int(self._degrees[k + j]) - int(self._u[j])
            if best is None or term < best:
                best = term
            if self._future_cleared(k, j + 1, best):
                return Fraction(best, self.scale)
            j += 1
        assert best is not None
        raise UndecidedError(
            f"shift minimization for index {k} is uncertified at j_budget={cap}",
            best=Fraction(best, self.scale),
        )


def _ball_degree_prefix(n: int) -> np.ndarray:
    degrees = []
    d = 0
    while len(degrees) <= n:
        degrees.extend([d] * (d + 1))
        d += 1
    return np.array(degrees[: n + 1], dtype=np.int64)


def ech_convex(domain: ConvexDomain, k: int, j_budget: Optional[int] = None) -> Fraction:
    """Capacity of a convex region via the circumscribed-triangle shift."""
    return _ConvexEvaluator(domain, j_budget).value(k)


def convex_sequence(domain: ConvexDomain, j_budget: Optional[int] = None) -> CapacitySequence:
    ev = _ConvexEvaluator(domain, j_budget)
    return CapacitySequence(ev.value)


def first_dominance_violation(
    source: ConcaveDomain, target: ConvexDomain, k_max: int
) -> Optional[int]:
    """Smallest k <= k_max with c_k(source) > c_k(target), or None."""
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    weights = weight_sequence(source).weights
    src = union_of_balls_prefix(weights, k_max)
    ev = _ConvexEvaluator(target)
    for k in range(k_max + 1):
        if src[k] > ev.value(k):
            return k
    return None


def ech_dominates(source: ConcaveDomain, target: ConvexDomain, k_max: int) -> bool:
    """Prefix check c_k(source) <= c_k(target) for 0 <= k <= k_max.

    A finite-prefix check: a True result is evidence, not proof.
    """
    return first_dominance_violation(source, target, k_max) is None
