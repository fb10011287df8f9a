import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from simprep import (BoxSet, DeclaredCoverOracle, DimensionMismatch, MissingCoverEntry, UnknownLabel,
                     box_cover_oracle, declared_cover_oracle, formula_key, intersection_nonempty, load_scene)
from simprep.covers import contractible_pieces, dump_scene, intersection_of
from oracles import cubes_of_boxes, cubical_betti
from shapes import ANNULUS_SCENE, CIRCLE_CATALOG, SPHERE_CATALOG, annulus


def test_formula_key_is_sorted_multiset():
    assert formula_key(["b", "a", "b"]) == ("a", "b", "b")


def test_sphere_catalog_lookups():
    o = declared_cover_oracle(SPHERE_CATALOG)
    assert o.cover(0, ("b", "a")) == ["c", "d"]
    assert o.cover(1, ("c", "d")) == ["e", "f"]
    assert o.cover(2, ("e", "f")) == []


def test_empty_key():
    assert declared_cover_oracle(SPHERE_CATALOG).cover(0, ()) == []


def test_circle_catalog():
    o = declared_cover_oracle(CIRCLE_CATALOG)
    assert o.cover(0, ("0", "1")) == ["p", "q"]
    assert o.cover(1, ("p", "q")) == []


def test_missing_entry():
    with pytest.raises(MissingCoverEntry) as err:
        declared_cover_oracle(SPHERE_CATALOG).cover(0, ("a", "c"))
    assert err.value.key == ("a", "c")


def test_superset_of_empty_key_is_empty():
    assert declared_cover_oracle(SPHERE_CATALOG).cover(3, ("e", "f", "x")) == []


def test_catalog_json_round_trip():
    o = declared_cover_oracle(SPHERE_CATALOG)
    again = DeclaredCoverOracle.from_json(o.to_json())
    assert again.catalog == o.catalog


def test_two_squares_sharing_an_edge():
    scene = load_scene({"dim": 2, "sets": {"A": [[[0, 0], [1, 1]]], "B": [[[1, 0], [2, 1]]]}})
    o = box_cover_oracle(scene)
    [m] = o.cover(0, ("A", "B"))
    assert o.box_of(m).boxes == (((1, 0), (1, 1)),)


def test_annulus_halves_meet_in_two_boxes():
    o = box_cover_oracle(annulus())
    members = o.cover(0, ("L", "R"))
    assert len(members) == 2
    assert sorted(o.box_of(m).boxes for m in members) == [(((0, 2), (1, 2)),), (((2, 0), (2, 1)),)]


def test_disjoint_labels():
    scene = load_scene({"dim": 1, "sets": {"A": [[[0], [1]]], "B": [[[3], [4]]]}})
    assert box_cover_oracle(scene).cover(0, ("A", "B")) == []


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        load_scene({"dim": 2, "sets": {"A": [[[0], [1]]]}})
    with pytest.raises(DimensionMismatch):
        BoxSet([((0,), (1,)), ((0, 0), (1, 1))])


def test_intersection_nonempty_examples():
    scene = load_scene({"dim": 2, "sets": {
        "A": [[[0, 0], [1, 1]]], "B": [[[1, 1], [2, 2]]], "C": [[[5, 5], [6, 6]]]}})
    assert intersection_nonempty(scene, ["A"])
    assert intersection_nonempty(scene, ["A", "B"])  # corner contact counts for closed boxes
    assert not intersection_nonempty(scene, ["A", "C"])
    with pytest.raises(UnknownLabel):
        intersection_nonempty(scene, ["Z"])


def test_normal_form_drops_contained_boxes():
    s = BoxSet([((0, 0), (3, 3)), ((1, 1), (2, 2)), ((0, 0), (3, 3))])
    assert s.boxes == (((0, 0), (3, 3)),)


def test_scene_round_trip():
    scene = load_scene(ANNULUS_SCENE)
    assert load_scene(dump_scene(scene)) == scene


def test_betti_of_ring():
    ring = annulus()["L"].union(annulus()["R"])
    assert ring.betti() == [1, 1, 0]


def test_oracle_is_deterministic():
    o = box_cover_oracle(annulus())
    assert o.cover(0, ("L", "R")) == o.cover(0, ("R", "L"))


def test_oracle_concurrent_calls_agree():
    o = box_cover_oracle(annulus())
    out = []
    threads = [threading.Thread(target=lambda: out.append(tuple(o.cover(0, ("L", "R"))))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out)) == 1


def test_box_mode_issues_single_boxes():
    scene = load_scene({"dim": 2, "sets": {"A": [[[0, 0], [4, 1]], [[0, 0], [1, 4]]], "B": [[[0, 0], [4, 4]]]}})
    assert len(box_cover_oracle(scene, pieces="boxes").cover(0, ("A", "B"))) == 2
    assert len(box_cover_oracle(scene).cover(0, ("A", "B"))) == 1


boxes2d = st.lists(
    st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2), st.integers(0, 2)).map(
        lambda t: ((t[0], t[1]), (t[0] + t[2], t[1] + t[3]))),
    min_size=1, max_size=4)


@settings(max_examples=80, deadline=None)
@given(boxes2d, boxes2d)
def test_members_cover_exact_intersection(a, b):
    scene = {"A": BoxSet(a), "B": BoxSet(b)}
    for mode in ("components", "boxes"):
        o = box_cover_oracle(scene, pieces=mode)
        members = [o.box_of(m) for m in o.cover(0, ("A", "B"))]
        got = set().union(*(cubes_of_boxes(m.boxes) for m in members)) if members else set()
        assert got == cubes_of_boxes(intersection_of(scene.values()).boxes)
        for m in members:
            assert cubical_betti(m.boxes, 1) == [1, 0]


@settings(max_examples=80, deadline=None)
@given(boxes2d)
def test_betti_agrees_with_oracle(a):
    assert BoxSet(a).betti()[:2] == cubical_betti(a, 1)


def test_contractible_pieces_of_ring_fall_apart():
    ring = annulus()["L"].union(annulus()["R"])
    pieces = contractible_pieces(ring)
    assert all(len(p.boxes) == 1 for p in pieces)
