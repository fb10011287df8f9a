import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from simprep import (CriticalValueList, SubLevelProblem, UPoly, UnboundedSet, critical_values_1d,
                     finite_filtration_1d, parse_formula, parse_polynomial, sa_barcode_1d)
from simprep.persistence import barcode
from simprep.sa_filtration import sublevel_set
from simprep.simplicial import betti_numbers

INF = math.inf


def problem(s, p, ell=0, radius=None):
    return SubLevelProblem(parse_formula(s), parse_polynomial(p), ell, radius)


def test_disk_critical_values():
    crit = critical_values_1d(problem("1 - X^2 >= 0", "X^2"))
    assert list(crit) == [0, 1]
    assert crit[-1] == -INF and crit[len(crit)] == INF


def test_empty_set():
    prob = problem("X^2 + 1 <= 0", "X")
    assert len(critical_values_1d(prob)) == 0
    assert [B.entries for B in sa_barcode_1d(prob)] == [[]]


def test_two_intervals_critical_values():
    crit = critical_values_1d(problem("(X+2)*(X+1) <= 0 or (X-1)*(X-2) <= 0", "X"))
    assert list(crit) == [-2, -1, 1, 2]


def test_disk_filtration():
    prob = problem("1 - X^2 >= 0", "X^2")
    F = finite_filtration_1d(prob, critical_values_1d(prob))
    assert [K.f_vector() for K in F.complexes] == [[1], [3, 2]]


def test_single_point_one_step():
    prob = problem("X - 2 = 0", "X^3 - X")
    F = finite_filtration_1d(prob, critical_values_1d(prob))
    assert len(F) == 1 and F.labels == [6]


def test_two_intervals_filtration_gains_components():
    prob = problem("(X+2)*(X+1) <= 0 or (X-1)*(X-2) <= 0", "X")
    F = finite_filtration_1d(prob, critical_values_1d(prob))
    assert [betti_numbers(K, 0)[0] for K in F.complexes] == [1, 1, 2, 2]


def test_disk_barcode():
    [B0] = sa_barcode_1d(problem("1 - X^2 >= 0", "X^2"))
    assert B0.entries == [(0, INF, 1)]


def test_two_intervals_barcode():
    [B0] = sa_barcode_1d(problem("(X+2)*(X+1) <= 0 or (X-1)*(X-2) <= 0", "X"))
    assert B0.entries == [(-2, INF, 1), (1, INF, 1)]


def test_double_well():
    # two minima at -1 and 1 with value -1 merge at the local max value 0
    [B0, B1] = sa_barcode_1d(problem("X^2 <= 4", "X^4 - 2*X^2", ell=1))
    assert B0.entries == [(-1, 0, 1), (-1, INF, 1)]
    assert B1.entries == []


def test_algebraic_critical_values():
    # P' = 3X^2 - 2 has roots +-sqrt(2/3); values are irrational
    prob = problem("X^2 <= 4", "X^3 - 2*X")
    crit = critical_values_1d(prob)
    approx = sorted(float(v) for v in crit)
    r = math.sqrt(2 / 3)
    expect = sorted([-4.0, 4.0, r**3 - 2 * r, -(r**3) + 2 * r])
    assert all(abs(a - b) < 1e-9 for a, b in zip(approx, expect))
    [B0] = sa_barcode_1d(prob)
    births = sorted(float(b) for b, _, _ in B0.entries)
    assert abs(births[0] + 4) < 1e-12 and abs(births[1] - (r**3 - 2 * r)) < 1e-9


def test_unbounded_needs_radius():
    with pytest.raises(UnboundedSet):
        problem("X >= 0", "X")
    [B0] = sa_barcode_1d(problem("X >= 0", "X", radius=5))
    assert B0.entries == [(0, INF, 1)]


def test_open_set_closed_or_rejected():
    # a strict formula with a closed realization is accepted after closing
    [B0] = sa_barcode_1d(problem("X^2 - 1 < 0 or X^2 - 1 = 0", "X"))
    assert B0.entries == [(-1, INF, 1)]


def test_sublevel_set_between_critical_values():
    prob = problem("X^2 <= 4", "X^4 - 2*X^2")
    S = sublevel_set(prob, Fraction(-1, 2))
    assert len(S.pieces) == 2


def random_problem(rng: random.Random) -> SubLevelProblem:
    pieces = []
    for _ in range(rng.randint(1, 3)):
        a = Fraction(rng.randint(-8, 6), rng.choice([1, 2]))
        b = a + Fraction(rng.randint(0, 4), rng.choice([1, 2]))
        pieces.append(f"(X - {a})*(X - {b}) <= 0")
    d = rng.randint(1, 4)
    P = UPoly([rng.randint(-3, 3) for _ in range(d)] + [rng.choice([-1, 1, 2])])
    return SubLevelProblem(parse_formula(" or ".join(pieces)), P, 1)


def refined_barcode(prob, extra):
    crit = critical_values_1d(prob).with_extra(extra)
    return barcode(finite_filtration_1d(prob, crit), prob.ell)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_refinement_invariance(seed):
    rng = random.Random(seed)
    prob = random_problem(rng)
    base = sa_barcode_1d(prob)
    extra = [Fraction(rng.randint(-400, 400), rng.randint(1, 9)) for _ in range(5)]
    assert refined_barcode(prob, extra) == base


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_births_are_critical_and_bars_count_components(seed):
    rng = random.Random(seed)
    prob = random_problem(rng)
    crit = critical_values_1d(prob)
    B = sa_barcode_1d(prob)
    for b, _, _ in B[0].entries:
        assert any(b == c for c in crit)
    for _ in range(3):
        t = Fraction(rng.randint(-300, 300), rng.randint(1, 5))
        S = sublevel_set(prob, t)
        assert B[0].alive_at(t) == len(S.pieces)
        assert B[1].alive_at(t) == 0
