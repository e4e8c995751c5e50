from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodrawings import CrossingData, DrawingError, convex_drawing, from_crossing_data, rotation_scheme_of, trace_faces, validate
from goodrawings.map_core import GoodDrawing, all_edges, build_map, canonical_cycle, drawings_equivalent, iter_regions, rebuild

from helpers import random_points, straight_line_data


def test_convex_k5_counts():
    d = convex_drawing(5)
    # 5 vertices + 5 crossings; 10 edges each cut twice
    assert d.num_nodes == 10
    assert d.num_segments() == 20
    assert len(d.faces) == 12
    assert d.euler_characteristic() == 2


def test_canonical_cycle_starts_at_minimum():
    assert canonical_cycle([4, 2, 5, 3]) == (2, 5, 3, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8), st.integers(0, 10**6))
def test_straight_line_round_trip(n, seed):
    data, signs = straight_line_data(random_points(n, random.Random(seed)))
    d = from_crossing_data(data)
    assert not validate(d)
    assert rotation_scheme_of(d) == data.rotation
    assert d.crossing_data() == data
    assert d._signs == signs
    assert d.num_crossings() == len(data.crossing_pairs())
    # every crossing node has degree 4 and splits two edges
    assert d.num_nodes == n + d.num_crossings()
    assert d.num_segments() == len(all_edges(n)) + 2 * d.num_crossings()


def test_trace_faces_partitions_darts():
    d = convex_drawing(6)
    faces = trace_faces(d)
    darts = sorted(x for f in faces for x in f.darts)
    assert darts == list(range(d.num_darts))
    assert len(faces) == 2 - d.num_nodes + d.num_segments()


def test_face_walk_keeps_face_on_left():
    # a counterclockwise triangle's bounded face is to the left of 1->2
    d = convex_drawing(3)
    x = d.edge_path((1, 2))[0]
    f = d.faces[d.face_of[x]]
    assert len(f) == 3
    assert [d.dart_origin[t] for t in f] == [0, 1, 2]


def test_json_round_trip():
    d = convex_drawing(6)
    text = d.crossing_data().dumps()
    back = CrossingData.loads(text)
    assert back == d.crossing_data()
    obj = json.loads(text)
    assert obj["n"] == 6
    assert obj["rotation"][0] == {"vertex": 1, "ccw": [2, 3, 4, 5, 6]}


def test_rotation_is_canonicalized():
    c = CrossingData(3, {1: (3, 2), 2: (1, 3), 3: (2, 1)})
    assert c.rotation == {1: (2, 3), 2: (1, 3), 3: (1, 2)}


def test_from_json_rejects_reversed_edge():
    obj = convex_drawing(4).crossing_data().to_json()
    obj["crossings"][0]["edge"] = [2, 1]
    with pytest.raises(DrawingError):
        CrossingData.from_json(obj)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda c: c.crossings.__setitem__((1, 2), ((2, 3),)), "adjacent"),
        (lambda c: c.crossings.__setitem__((1, 3), ()), "asymmetric"),
        (lambda c: c.rotation.__setitem__(1, (2, 2, 4)), "permutation"),
    ],
)
def test_inconsistent_data_rejected(mutate, message):
    c = convex_drawing(4).crossing_data()
    c = CrossingData(c.n, dict(c.rotation), dict(c.crossings))
    mutate(c)
    with pytest.raises(DrawingError, match=message):
        from_crossing_data(c)


def test_crossings_must_match_scheme():
    c = convex_drawing(4).crossing_data()
    empty = CrossingData(4, c.rotation, {})
    with pytest.raises(DrawingError, match="forced by the rotation scheme"):
        from_crossing_data(empty)


def test_wrong_order_is_not_spherical():
    d = convex_drawing(6)
    c = d.crossing_data()
    e = next(e for e, lst in c.crossings.items() if len(lst) >= 3)
    lst = list(c.crossings[e])
    lst[0], lst[-1] = lst[-1], lst[0]
    bad = dict(c.crossings)
    bad[e] = tuple(lst)
    with pytest.raises(DrawingError, match="not spherical"):
        rebuild(d, bad)


def test_validate_reports_broken_darts():
    d = convex_drawing(4)
    nxt = list(d.dart_next)
    nxt[0], nxt[1] = nxt[1], nxt[0]
    broken = GoodDrawing(d.n, d.node_vertex, d.dart_edge, d.dart_origin, d.dart_twin, nxt)
    assert not validate(GoodDrawing(d.n, d.node_vertex, d.dart_edge, d.dart_origin, d.dart_twin, list(d.dart_next)))
    assert validate(broken)


def test_equivalence_is_combinatorial():
    d = convex_drawing(5)
    again = from_crossing_data(CrossingData.loads(d.crossing_data().dumps()))
    assert drawings_equivalent(d, again)
    with pytest.raises(ValueError):
        drawings_equivalent(d, convex_drawing(6))


def test_iter_regions_walls_split_sphere():
    d = convex_drawing(3)
    walls = set(d.edge_path((1, 2)) + d.edge_path((2, 3)) + d.edge_path((1, 3)))
    assert len(list(iter_regions(d, 0, walls))) == 1
    assert len(list(iter_regions(d, 0, set()))) == 2


def test_build_map_sub_drawing():
    d = convex_drawing(5)
    c = d.crossing_data()
    keep = {(1, 3), (2, 4), (1, 2), (2, 3), (3, 4), (1, 4)}
    sub = build_map(5, c.rotation, c.crossings, d._signs, edges=keep)
    # K4 on 1..4 plus an isolated vertex 5: two components
    assert sub.num_crossings() == 1
    assert sub.euler_characteristic() == 3
