from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from simprep import (InconsistentPredicate, SimplicialComplex, betti_numbers, boundary_matrix, nerve,
                     skeleton)
from oracles import simplicial_betti

complexes = st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True),
                     min_size=0, max_size=8).map(SimplicialComplex)


def test_skeleton_of_tetrahedron_is_k4():
    K = skeleton(SimplicialComplex.full_simplex(3), 1)
    assert K.f_vector() == [4, 6]


def test_skeleton_idempotent():
    K = SimplicialComplex.full_simplex(2)
    assert skeleton(K, 5) == K


def test_skeleton_of_triangle_boundary():
    K = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert skeleton(K, 0).simplices(0) == [(0,), (1,), (2,)]
    assert skeleton(K, 0).f_vector() == [3]


def test_segment_boundary_column():
    M = boundary_matrix(SimplicialComplex([(0, 1)]), 1)
    assert M.to_dense() == [[-1], [1]]


def test_triangle_boundary_rank():
    K = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert boundary_matrix(K, 1).rank() == 2


def test_boundary_squared_zero_on_filled_triangle():
    K = SimplicialComplex.full_simplex(2)
    assert (boundary_matrix(K, 1) @ boundary_matrix(K, 2)).is_zero()


def test_point_betti():
    assert betti_numbers(SimplicialComplex([(0,)]), 2) == [1, 0, 0]


def test_four_cycle_betti():
    K = SimplicialComplex([(0, 1), (1, 2), (2, 3), (0, 3)])
    assert betti_numbers(K, 1) == [1, 1]


def test_empty_complex():
    K = SimplicialComplex()
    assert len(K) == 0
    assert betti_numbers(K, 1) == [0, 0]


def test_missing_face_rejected_without_closing():
    with pytest.raises(ValueError):
        SimplicialComplex([(0, 1)], close=False)


def test_json_round_trip():
    K = SimplicialComplex([(0, 1, 2), (2, 3)])
    doc = K.to_json()
    assert sorted(map(tuple, doc["simplices"])) == [(0, 1, 2), (2, 3)]
    assert SimplicialComplex.from_json(doc) == K


def test_nerve_two_arcs_misses_the_loop():
    K, labels = nerve(["A", "B"], lambda s: True)
    assert betti_numbers(K, 1) == [1, 0]


def test_nerve_three_arcs():
    K, _ = nerve(["A", "B", "C"], lambda s: len(s) <= 2)
    assert betti_numbers(K, 1) == [1, 1]


def test_nerve_empty_cover():
    K, labels = nerve([], lambda s: True)
    assert len(K) == 0 and labels == []


def test_nerve_inconsistent_predicate():
    with pytest.raises(InconsistentPredicate):
        nerve(["A", "B", "C"], lambda s: s != frozenset("AC"))


@settings(max_examples=150, deadline=None)
@given(complexes)
def test_boundary_of_boundary_vanishes(K):
    for p in range(1, K.dim + 1):
        assert (boundary_matrix(K, p) @ boundary_matrix(K, p + 1)).is_zero()


@settings(max_examples=150, deadline=None)
@given(complexes)
def test_betti_matches_dense_oracle(K):
    top = max(K.dim, 0)
    assert betti_numbers(K, top) == simplicial_betti(K.simplex_set, top)


@settings(max_examples=150, deadline=None)
@given(complexes)
def test_euler_characteristic(K):
    top = max(K.dim, 0)
    b = betti_numbers(K, top)
    assert K.euler_characteristic() == sum((-1) ** p * x for p, x in enumerate(b))


@settings(max_examples=100, deadline=None)
@given(complexes)
def test_face_closed(K):
    S = K.simplex_set
    for s in S:
        for k in range(1, len(s)):
            assert all(f in S for f in combinations(s, k))
