"""SVG pictures of drawings.

Coordinates exist only here.  The planarized map is laid out with a
barycentric (Tutte) embedding: the nodes of one face are pinned to a regular
polygon and every other node sits at the average of its neighbours.
"""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .map_core import DrawingError, GoodDrawing, all_edges, validate


def default_outer_face(d: GoodDrawing) -> int:
    """A longest face, ties going to the face with the smallest dart."""
    return min(range(len(d.faces)), key=lambda f: (-len(d.faces[f]), min(d.faces[f])))


def tutte_layout(d: GoodDrawing, outer: int | None = None) -> np.ndarray:
    if outer is None:
        outer = default_outer_face(d)
    if not 0 <= outer < len(d.faces):
        raise DrawingError(f"no face {outer}; the drawing has {len(d.faces)} faces")
    ring: list[int] = []
    for x in d.faces[outer]:
        u = d.dart_origin[x]
        if u not in ring:
            ring.append(u)
    m = d.num_nodes
    pos = np.zeros((m, 2))
    k = len(ring)
    # walk the outer face clockwise so the rest of the map lands inside
    for t, u in enumerate(ring):
        a = math.pi / 2 - 2 * math.pi * t / k
        pos[u] = (math.cos(a), math.sin(a))
    fixed = set(ring)
    free = [u for u in range(m) if u not in fixed]
    if free:
        index = {u: t for t, u in enumerate(free)}
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for u in free:
            r = index[u]
            for x in d.darts_at(u):
                w = d.head(x)
                A[r, r] += 1
                if w in index:
                    A[r, index[w]] -= 1
                else:
                    b[r] += pos[w]
        pos[free] = np.linalg.solve(A, b)
    return pos


def _panel(d: GoodDrawing, outer: int | None, size: float, dx: float, title: str | None) -> list[str]:
    pos = tutte_layout(d, outer)
    margin = 30.0
    scale = (size - 2 * margin) / 2

    def xy(u: int) -> tuple[float, float]:
        x, y = pos[u]
        return dx + margin + (x + 1) * scale, margin + (1 - y) * scale

    out = [f'<g class="panel" data-crossings="{d.num_crossings()}">']
    if title:
        out.append(f'<text x="{dx + size / 2:.2f}" y="16" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for e in all_edges(d.n):
        path = d.edge_path(e)
        pts = [xy(d.dart_origin[x]) for x in path] + [xy(d.head(path[-1]))]
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<polyline class="edge" data-edge="{e[0]}-{e[1]}" points="{coords}" fill="none" stroke="black" stroke-width="1.2"/>')
    for v in range(1, d.n + 1):
        x, y = xy(d.vertex_node(v))
        out.append(
            f'<g class="vertex" data-vertex="{v}"><circle cx="{x:.2f}" cy="{y:.2f}" r="9" fill="white" stroke="black"/>'
            f'<text x="{x:.2f}" y="{y + 4:.2f}" text-anchor="middle" font-size="11">{v}</text></g>'
        )
    out.append("</g>")
    return out


def render_svg(
    drawings: GoodDrawing | Sequence[GoodDrawing],
    outer: int | None = None,
    size: float = 420.0,
    titles: Sequence[str] | None = None,
) -> str:
    """One panel per drawing, side by side."""
    if isinstance(drawings, GoodDrawing):
        drawings = [drawings]
    for d in drawings:
        rep = validate(d)
        if rep:
            raise DrawingError(f"cannot render an invalid drawing: {rep.violations[0]}")
    width = size * len(drawings)
    total = sum(d.num_crossings() for d in drawings)
    body = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {width:.0f} {size:.0f}" data-crossings="{total}">',
        f'<rect width="{width:.0f}" height="{size:.0f}" fill="white"/>',
    ]
    for k, d in enumerate(drawings):
        title = titles[k] if titles else None
        body += _panel(d, outer, size, k * size, title)
    body.append("</svg>")
    return "\n".join(body) + "\n"
