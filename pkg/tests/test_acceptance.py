"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines.  Every randomized criterion states its seed inline.
"""

import itertools
import random
import time
from fractions import Fraction

from sympack import (
    BallConfig,
    ConcaveDomain,
    ConvexDomain,
    HigherDimProblem,
    ObstructionTuple,
    decide_concave_into_convex,
    decide_stabilized_packing,
    decide_stabilized_toric,
    decide_stabilized_two_ball,
    ech_concave,
    ech_convex,
    ech_dominates,
    ech_ellipsoid,
    ellipsoid_weights,
    enumerate_exceptional,
    equal_ball_fraction,
    is_exceptional_vector,
    ms_value,
    negative_weight_sequence,
    packing_capacity,
    verify_no_new_obstruction,
    weight_sequence,
)
from sympack.ech import union_of_balls_prefix
from conftest import random_concave, random_convex

EQUAL_BALL_TABLE = {
    1: Fraction(1),
    2: Fraction(1, 2),
    3: Fraction(3, 4),
    4: Fraction(1),
    5: Fraction(20, 25),
    6: Fraction(24, 25),
    7: Fraction(63, 64),
    8: Fraction(288, 289),
}


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, f"criterion {n} failed: {detail}"


def exhaustive_degree_max(sizes, d):
    """Independent oracle: enumerate every multiplicity tuple at degree d."""
    budget = d * d + 3 * d
    best = Fraction(0)

    def rec(i, left, value):
        nonlocal best
        if value > best:
            best = value
        if i == len(sizes):
            return
        m = 1
        while m * m + m <= left:
            rec(i + 1, left - m * m - m, value + m * sizes[i])
            m += 1
        rec(i + 1, left, value)

    rec(0, budget, Fraction(0))
    return best


def test_criterion_1_equal_ball_table():
    t0 = time.monotonic()
    for k, want in EQUAL_BALL_TABLE.items():
        res = equal_ball_fraction(k, d_budget=30)
        assert res.is_exact, f"k={k} not certified"
        assert res.lower == want, f"k={k}: {res.lower} != {want}"
    nine = equal_ball_fraction(9, d_budget=30)  # within the allowed budget cap of 200
    width = nine.upper - nine.lower
    assert nine.lower <= 1 <= nine.upper and width <= Fraction(1, 1000)
    elapsed = time.monotonic() - t0
    _report(1, elapsed < 60, f"table k=1..8 exact, k=9 width {width} ({elapsed:.2f}s)")


def test_criterion_2_staircase_anchors():
    t0 = time.monotonic()
    anchors = [
        (Fraction(1), Fraction(1)),
        (Fraction(2), Fraction(2)),
        (Fraction(4), Fraction(2)),
        (Fraction(5), Fraction(5, 2)),
        (Fraction(25, 4), Fraction(5, 2)),
        (Fraction(9), Fraction(3)),
    ]
    for x, want in anchors:
        res = ms_value(x, d_budget=30)
        assert res.is_exact and res.value.as_rational() == want, (x, res)
        sizes = ellipsoid_weights(1, x).weights
        # oracle: exhaustive tuple search through the witness degree and beyond
        d_cert = max(res.witness.d + 3, 6)
        oracle = max(exhaustive_degree_max(sizes, d) / d for d in range(1, d_cert + 1))
        assert oracle == want
        w = res.witness
        cost = sum(v * v + v for v in w.m)
        assert cost <= w.d * w.d + 3 * w.d
        assert sum(v * s for v, s in zip(w.m, sizes)) == want * w.d
    elapsed = time.monotonic() - t0
    _report(2, elapsed < 30, f"6 anchors exact with exhaustive oracle ({elapsed:.2f}s)")


def test_criterion_3_dual_engine_agreement():
    rng = random.Random(20250810)
    certified_pairs = 0
    agreements = 0
    total = 100
    for _ in range(total):
        k = rng.randint(1, 5)
        sizes = []
        for _ in range(k):
            den = rng.randint(1, 8)
            num = rng.randint(max(1, -(-den // 4)), 2 * den)  # value in [1/4, 2]
            sizes.append(Fraction(num, den))
        config = BallConfig.make(sizes)
        full = packing_capacity(config, 12, "full-tuples")
        exc = packing_capacity(config, 12, "exceptional-only")
        if full.is_exact and exc.is_exact:
            certified_pairs += 1
            if full.value == exc.value:
                agreements += 1
    ok = agreements == certified_pairs and certified_pairs > 0
    _report(
        3,
        ok,
        f"{certified_pairs}/{total} configs certified by both engines, "
        f"{agreements}/{certified_pairs} agree",
    )


def test_criterion_4_weight_identities():
    rng = random.Random(4040)
    for _ in range(1000):
        a = Fraction(rng.randint(1, 120), rng.randint(1, 20))
        b = Fraction(rng.randint(1, 120), rng.randint(1, 20))
        data = ellipsoid_weights(a, b)
        assert data.square_sum() == a * b  # 2 * area of the (a,b) triangle
        tri = weight_sequence(ConcaveDomain.triangle(a, b))
        assert tri.weights == data.weights
    for _ in range(200):
        dom = random_convex(rng)
        data = negative_weight_sequence(dom)
        assert data.head * data.head - data.square_sum() == 2 * dom.area
    _report(4, True, "1000 ellipsoid expansions + 200 convex regions satisfy the identities")


def test_criterion_5_ech_triple_consistency():
    t0 = time.monotonic()
    rng = random.Random(5150)
    checked = 0
    for _ in range(50):
        den = rng.randint(1, 20)
        a = Fraction(rng.randint(1, 4 * den), den)
        den = rng.randint(1, 20)
        b = Fraction(rng.randint(1, 4 * den), den)
        ratio = max(a, b) / min(a, b)
        if ratio > 12:  # keep the shift scans at sane lengths
            b = a * Fraction(rng.randint(1, 12))
        tri = ConcaveDomain.triangle(a, b)
        cv = ConvexDomain.triangle(a, b)
        from sympack.ech import _ConvexEvaluator

        ev = _ConvexEvaluator(cv)
        weights = weight_sequence(tri).weights
        union = union_of_balls_prefix(weights, 200)
        for k in range(201):
            e = ech_ellipsoid(a, b, k)
            assert union[k] == e, (a, b, k, "concave route")
            assert ev.value(k) == e, (a, b, k, "convex route")
            checked += 1
    # unit square prefix against the brute-force shift-minimization oracle
    u = union_of_balls_prefix([Fraction(1), Fraction(1)], 400)
    brute = [
        min(2 * _ball_value(k + j) - u[j] for j in range(401)) for k in range(6)
    ]
    assert brute == [0, 1, 2, 2, 3, 3]
    sq = ConvexDomain.rectangle(1, 1)
    assert [ech_convex(sq, k) for k in range(6)] == brute
    elapsed = time.monotonic() - t0
    _report(5, elapsed < 120, f"50 ellipsoids x 201 indices x 3 routes ({elapsed:.2f}s)")


def _ball_value(k):
    d = 0
    while (d + 1) * (d + 2) // 2 <= k:
        d += 1
    return d


def test_criterion_6_no_new_obstruction():
    t0 = time.monotonic()
    rng = random.Random(6001)
    target = Fraction(2)
    scanned = 0
    for _ in range(100):
        k = rng.randint(2, 5)
        sizes = [Fraction(rng.randint(1, 12), 12) for _ in range(k)]  # <= 1 = R/2
        for n in (3, 4, 5):
            scan = verify_no_new_obstruction(
                HigherDimProblem.make(n, sizes, target), d_max=30
            )
            assert scan.clean, (n, sizes, scan.violations)
            scanned += scan.tuples_scanned
    elapsed = time.monotonic() - t0
    _report(6, elapsed < 60, f"0 violations across {scanned} classes ({elapsed:.2f}s)")


def test_criterion_7_exceptional_vs_brute_force():
    k_max = 17

    def naive_reduce(d, m):
        m = sorted(m, reverse=True)
        for _ in range(d + len(m) + 5):
            if d <= 0:
                break
            mm = m + [0] * max(0, 3 - len(m))
            if mm[0] + mm[1] + mm[2] <= d:
                return False
            d, m = (
                2 * d - mm[0] - mm[1] - mm[2],
                sorted(
                    [d - mm[1] - mm[2], d - mm[0] - mm[2], d - mm[0] - mm[1]] + mm[3:],
                    reverse=True,
                ),
            )
        return d == 0 and [v for v in m if v != 0] == [-1]

    oracle = []
    for d in range(1, 7):
        target_sum, target_sq = 3 * d - 1, d * d + 1

        def sweep(prefix, s, q, cap):
            if s == 0:
                if q == 0 and naive_reduce(d, list(prefix)):
                    oracle.append((d, tuple(prefix)))
                return
            if len(prefix) >= k_max or q < s or q > cap * s:
                return
            for p in range(min(cap, s), 0, -1):
                if p * p <= q:
                    sweep(prefix + [p], s - p, q - p * p, p)

        sweep([], target_sum, target_sq, d)
    oracle.sort()
    engine = [(t.d, t.m) for t in enumerate_exceptional(6, k_max)]
    assert engine == oracle
    _report(7, True, f"enumeration to degree 6 matches brute force ({len(engine)} classes)")


def test_criterion_8_dominance_follows_yes():
    t0 = time.monotonic()
    rng = random.Random(8808)
    pairs = 0
    while pairs < 50:
        source = random_concave(rng, max_den=6, max_segments=3)
        target = random_convex(rng, max_den=6, max_segments=3)
        total = sum(weight_sequence(source).weights) + sum(
            negative_weight_sequence(target).weights
        )
        head = negative_weight_sequence(target).head
        factor = (2 * total / head).__ceil__()
        target = target.scale(max(1, factor))  # generous target forces a yes
        verdict = decide_concave_into_convex(source, target, "open", d_budget=25)
        if verdict.decision != "yes":
            continue
        assert ech_dominates(source, target, 300), (source, target)
        pairs += 1
    elapsed = time.monotonic() - t0
    _report(8, elapsed < 300, f"50 yes-pairs all dominate through k=300 ({elapsed:.2f}s)")


def test_criterion_9_stabilization_invariance():
    rng = random.Random(9009)
    fibers = [(g, L) for g in (0, 1, 2, 5) for L in (Fraction(1, 3), Fraction(1), Fraction(100))]
    problems = 0
    while problems < 50:
        kind = problems % 3
        if kind == 0:
            k = rng.randint(1, 4)
            sizes = BallConfig.make(
                Fraction(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(k)
            )
            target = Fraction(rng.randint(2, 30), rng.randint(1, 4))
            decisions = set()
            for g, L in fibers:
                dec = decide_stabilized_packing(sizes, target, g, L, d_budget=16)
                decisions.add(dec.decision)
                assert dec.basis == ("Theorem A" if g >= 1 else "Section 4.2")
                assert dec.fiber_independent
            assert len(decisions) == 1
        elif kind == 1:
            n = rng.randint(2, 5)
            r1 = Fraction(rng.randint(1, 6), rng.randint(1, 3))
            r2 = Fraction(rng.randint(1, 6), rng.randint(1, 3))
            R = Fraction(rng.randint(1, 12), rng.randint(1, 3))
            dec = decide_stabilized_two_ball(n, r1, r2, R)
            assert dec.basis == "Theorem B"
            if r1 + r2 >= R:
                assert dec.decision == "no"
        else:
            source = random_concave(rng, max_den=5, max_segments=2)
            target = random_convex(rng, max_den=5, max_segments=2).scale(rng.randint(1, 4))
            decisions = set()
            for g, L in fibers:
                dec = decide_stabilized_toric(source, target, g, L, d_budget=16, ech_kmax=0)
                decisions.add(dec.decision)
                assert dec.basis == "Theorem D"
                assert dec.fiber_independent
            assert len(decisions) == 1
        problems += 1
    _report(9, True, "50 problems fiber-independent with correct basis labels")
