import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympack import (
    HigherDimProblem,
    HypothesisError,
    InputError,
    ObstructionTuple,
    conjectureA_feasible,
    curve_energy,
    equal_ball_fraction,
    equal_packing_value,
    fredholm_index,
    verify_no_new_obstruction,
)
from sympack.highdim import stability_threshold


def brute_scan(problem, d_max):
    """Oracle: materialize the whole family and check energies."""
    n, sizes, R = problem.n, problem.sizes.sizes, problem.target
    k = len(sizes)
    count, violations = 0, []
    for d in range(1, d_max + 1):
        for m in itertools.product(range(d + 1), repeat=k):
            if fredholm_index(n, 0, ObstructionTuple.make(d, m)) < 0:
                continue
            count += 1
            if sum(v * s for v, s in zip(m, sizes)) > R * d:
                violations.append((d, m))
    return count, violations


def test_index_examples():
    t = ObstructionTuple.make(1, [1, 1])
    assert fredholm_index(3, 0, t) == 0
    assert fredholm_index(4, 0, t) == 0
    assert fredholm_index(4, 1, t) == -2


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=2, max_value=7),
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=9),
    st.lists(st.integers(min_value=0, max_value=6), max_size=6),
)
def test_index_parity_and_genus_shift(n, g, d, m):
    t = ObstructionTuple.make(d, m)
    assert fredholm_index(n, g, t) % 2 == 0
    assert fredholm_index(n, g + 1, t) == fredholm_index(n, g, t) - 2 * (n - 3)


def test_energy_examples():
    t = ObstructionTuple.make(1, [1, 1])
    assert curve_energy(HigherDimProblem.make(3, [1, 1], 2), t) == 0
    assert curve_energy(HigherDimProblem.make(3, [1, 1], 3), t) == 1
    t3 = ObstructionTuple.make(1, [1, 1, 1])
    assert curve_energy(HigherDimProblem.make(3, [1, 1, 1], 2), t3) == -1
    with pytest.raises(InputError):
        curve_energy(HigherDimProblem.make(3, [1, 1], 2), t3)


def test_energy_linearity():
    rng = random.Random(37)
    for _ in range(20):
        k = rng.randint(1, 4)
        sizes = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(k)]
        R = sum(sizes) * 2
        m = [rng.randint(0, 3) for _ in range(k)]
        t = ObstructionTuple.make(rng.randint(1, 5), sorted(m, reverse=True))
        lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        p1 = HigherDimProblem.make(3, sizes, R)
        p2 = HigherDimProblem.make(3, [s * lam for s in sizes], R * lam)
        assert curve_energy(p2, t) == lam * curve_energy(p1, t)


def test_scan_examples_and_counts_match_oracle():
    p = HigherDimProblem.make(3, [1, 1], 2)
    scan = verify_no_new_obstruction(p, 8)
    want_count, want_violations = brute_scan(p, 8)
    assert scan.clean and not want_violations
    assert scan.tuples_scanned == want_count

    p5 = HigherDimProblem.make(5, [1, 1, 1], 2)
    scan5 = verify_no_new_obstruction(p5, 5)
    count5, viol5 = brute_scan(p5, 5)
    assert scan5.clean and not viol5
    assert scan5.tuples_scanned == count5


def test_scan_hypothesis_error():
    with pytest.raises(HypothesisError) as e:
        verify_no_new_obstruction(HigherDimProblem.make(3, [1, 1], Fraction(3, 2)), 5)
    assert "1 + 1" in str(e.value)


def test_feasibility_examples():
    assert conjectureA_feasible(HigherDimProblem.make(3, [1, 1], Fraction(201, 100))).feasible == "yes"
    assert conjectureA_feasible(HigherDimProblem.make(3, [1, 1], Fraction(201, 100))).basis == "conjectural"
    v = conjectureA_feasible(HigherDimProblem.make(3, [1, 1], 2))
    assert (v.feasible, v.basis) == ("no", "proved necessary")
    assert conjectureA_feasible(HigherDimProblem.make(3, [1] * 9, 2)).feasible == "no"


def test_equal_packing_values():
    assert equal_packing_value(3, 2) == equal_packing_value(3, 2)
    r = equal_packing_value(3, 2)
    assert (r.value, r.status) == (Fraction(1, 4), "known")
    r = equal_packing_value(3, 27)
    assert (r.value, r.status) == (1, "known")
    r = equal_packing_value(3, 9)
    assert (r.value, r.status) == (1, "conjectural")
    assert stability_threshold(3) == 23
    # the display-gap extension annotates its justification
    r = equal_packing_value(3, 6)
    assert (r.value, r.status) == (Fraction(6, 8), "known") and r.note


def test_equal_packing_delegates_to_dimension_four():
    for k in (1, 2, 3, 5, 7, 9, 12):
        assert equal_packing_value(2, k).value == equal_ball_fraction(k).lower


def test_validation():
    with pytest.raises(InputError):
        equal_packing_value(1, 3)
    with pytest.raises(InputError):
        HigherDimProblem.make(3, [1, 1], 0)
    with pytest.raises(InputError):
        verify_no_new_obstruction(HigherDimProblem.make(2, [1, 1], 3), 5)
