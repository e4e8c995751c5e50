from __future__ import annotations

import itertools
import xml.etree.ElementTree as ET
from math import comb

import numpy as np
import pytest

from goodrawings import DrawingError, convex_drawing, perturb
from goodrawings.render import default_outer_face, render_svg, tutte_layout

from helpers import base, segments_cross

SVG = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize("kind", ["convex", "cylindrical"])
@pytest.mark.parametrize("n", [4, 6, 8])
def test_layout_is_plane(kind, n):
    d, _ = perturb(base(kind, n), 10, n)
    pos = tutte_layout(d)
    ring = {d.dart_origin[x] for x in d.faces[default_outer_face(d)]}
    for u in range(d.num_nodes):
        r = np.hypot(*pos[u])
        if u in ring:
            assert r == pytest.approx(1.0)
        else:
            assert r < 1
            nbrs = [pos[d.head(x)] for x in d.darts_at(u)]
            assert np.allclose(pos[u], np.mean(nbrs, axis=0))
    segs = [(d.dart_origin[x], d.head(x)) for x in range(d.num_darts) if x < d.dart_twin[x]]
    for (a, b), (c, e) in itertools.combinations(segs, 2):
        if len({a, b, c, e}) == 4:
            assert not segments_cross(pos[a], pos[b], pos[c], pos[e])


def test_svg_structure():
    d = convex_drawing(6)
    root = ET.fromstring(render_svg(d))
    assert root.tag == SVG + "svg"
    assert root.get("data-crossings") == "15"
    edges = root.findall(f".//{SVG}polyline[@class='edge']")
    assert len(edges) == comb(6, 2)
    assert {p.get("data-edge") for p in edges} == {f"{i}-{j}" for i, j in itertools.combinations(range(1, 7), 2)}
    # an edge crossed k times is drawn through k + 2 points
    e13 = next(p for p in edges if p.get("data-edge") == "1-3")
    assert len(e13.get("points").split()) == len(d.crossing_data().crossings[(1, 3)]) + 2
    assert len(root.findall(f".//{SVG}g[@class='vertex']")) == 6


def test_two_panels():
    d = convex_drawing(6)
    d2, _ = perturb(d, 1, 0)
    root = ET.fromstring(render_svg([d, d2], titles=["before", "after"]))
    panels = root.findall(f"{SVG}g[@class='panel']")
    assert len(panels) == 2
    assert root.get("data-crossings") == "30"
    assert [t.text for t in root.iter(SVG + "text") if t.text in ("before", "after")] == ["before", "after"]


def test_bad_outer_face():
    d = convex_drawing(5)
    with pytest.raises(DrawingError, match="no face"):
        render_svg(d, outer=len(d.faces))


def test_chosen_outer_face():
    d = convex_drawing(5)
    for f in range(len(d.faces)):
        ET.fromstring(render_svg(d, outer=f))
