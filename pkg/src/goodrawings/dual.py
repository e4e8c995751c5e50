"""Arrangements of arcs, their duals, and dual paths.

An arrangement here is a sub-map of a good drawing: a set of designated edges
(the arcs), optionally a set of uncrossed boundary edges (walls), and
optionally one excluded face.  For a convex-position drawing, or anything
reached from one by Reidemeister moves, the hull edges stay uncrossed and
every chord splits the hull disc, so ``Arrangement.in_hull`` gives a genuine
arrangement of arcs in a disc.

Faces are face indices of the sub-map.  A dual path is a face sequence plus
the dart crossed at each step, oriented so that the previous face is on its
left.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .map_core import DrawingError, Edge, GoodDrawing, build_map, edge


class DualPathError(ValueError):
    pass


@dataclass
class Arrangement:
    drawing: GoodDrawing
    arcs: frozenset[Edge]
    walls: frozenset[Edge] = frozenset()
    outer: int | None = None
    # darts of designated arcs whose both sides are usable faces
    _crossable: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        d = self.drawing
        if d.euler_characteristic() != 2:
            raise DrawingError("arrangement sub-map is not connected")
        self._crossable = [
            t
            for t in range(d.num_darts)
            if d.dart_edge[t] in self.arcs and self.outer not in (d.face_of[t], d.face_of[d.dart_twin[t]])
        ]

    @classmethod
    def from_drawing(
        cls,
        d: GoodDrawing,
        arcs: Iterable[Edge],
        walls: Iterable[Edge] = (),
        outer_dart: tuple[int, int] | None = None,
    ) -> "Arrangement":
        """Sub-map of ``d`` on ``arcs`` and ``walls``.

        ``outer_dart = (a, b)`` excludes the face lying to the left of edge
        ``ab`` walked from ``a`` to ``b``.
        """
        arcs = frozenset(edge(*e) for e in arcs)
        walls = frozenset(edge(*e) for e in walls) - arcs
        data = d.crossing_data()
        signs = d._signs
        if signs is None:
            from .rotation_facts import crossing_signs

            signs = crossing_signs(data.rotation, data.crossing_pairs())
        for w in walls:
            if any(f in arcs or f in walls for f in data.crossings[w]):
                raise DrawingError(f"wall {w} is crossed")
        sub = build_map(d.n, data.rotation, data.crossings, signs, edges=arcs | walls)
        outer = None
        if outer_dart is not None:
            a, b = outer_dart
            path = sub.edge_path(edge(a, b))
            t = path[0] if a < b else sub.dart_twin[path[-1]]
            outer = sub.face_of[t]
        return cls(sub, arcs, walls, outer)

    @classmethod
    def in_hull(cls, d: GoodDrawing, arcs: Iterable[Edge]) -> "Arrangement":
        """Chords of a drawing whose hull cycle 1, 2, ..., n is uncrossed and
        counterclockwise; the hull edges are walls and the outside is dropped."""
        n = d.n
        hull = {edge(k, k % n + 1) for k in range(1, n + 1)}
        return cls.from_drawing(d, set(arcs) - hull, hull, outer_dart=(2, 1))

    @property
    def faces(self) -> list[int]:
        return [f for f in range(len(self.drawing.faces)) if f != self.outer]

    def arc_of(self, t: int) -> Edge:
        return self.drawing.dart_edge[t]

    def crossing_darts(self, f: int) -> list[int]:
        """Darts on the boundary of ``f`` that lead across an arc, in walking order."""
        ok = set(self._crossable)
        return [t for t in self.drawing.faces[f] if t in ok]

    def across(self, t: int) -> int:
        return self.drawing.face_of[self.drawing.dart_twin[t]]


def dual_graph(a: Arrangement) -> dict[int, list[tuple[int, int]]]:
    """Adjacency lists ``face -> [(dart, neighbour face)]``; each arc segment
    gives one dual edge, seen once from each side."""
    adj: dict[int, list[tuple[int, int]]] = {f: [] for f in a.faces}
    d = a.drawing
    for t in a._crossable:
        adj[d.face_of[t]].append((t, a.across(t)))
    return adj


def dual_edge_count(a: Arrangement) -> int:
    return sum(len(v) for v in dual_graph(a).values()) // 2


@dataclass(frozen=True)
class DualPath:
    faces: tuple[int, ...]
    darts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.darts) != len(self.faces) - 1:
            raise ValueError("a dual path needs one dart per step")

    def __len__(self) -> int:
        return len(self.darts)

    def arcs(self, a: Arrangement) -> list[Edge]:
        return [a.arc_of(t) for t in self.darts]

    def arc_counts(self, a: Arrangement) -> Counter:
        return Counter(self.arcs(a))

    def check(self, a: Arrangement) -> None:
        """Raise unless consecutive faces are adjacent across the named darts."""
        d = a.drawing
        ok = set(a._crossable)
        for k, t in enumerate(self.darts):
            if t not in ok:
                raise DualPathError(f"step {k}: dart {t} is not a crossable arc segment")
            if d.face_of[t] != self.faces[k] or a.across(t) != self.faces[k + 1]:
                raise DualPathError(f"step {k}: dart {t} does not join faces {self.faces[k]} and {self.faces[k + 1]}")

    def crosses_each_at_most_once(self, a: Arrangement) -> bool:
        return all(c <= 1 for c in self.arc_counts(a).values())


def _component(a: Arrangement, start: int, region: set[int], banned: set[Edge]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for t in a.crossing_darts(f):
            if a.arc_of(t) in banned:
                continue
            g = a.across(t)
            if g in region and g not in seen:
                seen.add(g)
                stack.append(g)
    return seen


def find_dual_path(a: Arrangement, fa: int, fb: int) -> DualPath:
    """Path from face ``fa`` to ``fb`` crossing each arc at most once.

    At each step the first arc met on a walk around the current face that
    separates it from ``fb`` (inside the region still in play) is crossed, and
    play continues on the side of that arc containing ``fb``.
    """
    usable = set(a.faces)
    for f in (fa, fb):
        if f not in usable:
            raise DualPathError(f"face {f} is not a face of the arrangement")
    region = set(usable)
    banned: set[Edge] = set()
    faces = [fa]
    darts: list[int] = []
    cur = fa
    while cur != fb:
        step = None
        tried: set[Edge] = set()
        for t in a.crossing_darts(cur):
            sigma = a.arc_of(t)
            if sigma in banned or sigma in tried or a.across(t) not in region:
                continue
            tried.add(sigma)
            side_b = _component(a, fb, region, banned | {sigma})
            if cur in side_b:
                continue
            if a.across(t) in side_b:
                step = (t, side_b)
                break
        if step is None:
            raise DualPathError(f"no separating arc at face {cur}; not an arrangement of arcs")
        t, side_b = step
        banned.add(a.arc_of(t))
        region = side_b
        darts.append(t)
        cur = a.across(t)
        faces.append(cur)
    return DualPath(tuple(faces), tuple(darts))


# ---------------------------------------------------------------------------
# Sliding over vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlideStep:
    """Slide of the path over crossing node ``vertex`` at path position ``index``.

    ``old`` is the replaced face run (F0, F1, F2) and ``new`` is (F0, F3, F2),
    F3 being the face opposite F1 at the vertex.
    """

    vertex: int
    index: int
    old: tuple[int, int, int]
    new: tuple[int, int, int]
    old_darts: tuple[int, int]
    new_darts: tuple[int, int]

    def apply(self, p: DualPath) -> DualPath:
        i = self.index
        if p.faces[i : i + 3] != self.old or p.darts[i : i + 2] != self.old_darts:
            raise DualPathError(f"slide over node {self.vertex} does not match the path at {i}")
        faces = p.faces[:i] + self.new + p.faces[i + 3 :]
        darts = p.darts[:i] + self.new_darts + p.darts[i + 2 :]
        return DualPath(faces, darts)


def _corner_slide(a: Arrangement, t_in: int, t_out: int) -> tuple[int, int, int, int] | None:
    """If entering face F1 over ``t_in`` and leaving over ``t_out`` turns around
    one crossing node v of the two arcs, return (v, F3, new_in, new_out)."""
    d = a.drawing
    e_in = d.dart_twin[t_in]  # dart on the F1 side of the entry segment
    if d.face_next(e_in) == t_out:
        v = d.head(e_in)
    elif d.face_next(t_out) == e_in:
        v = d.head(t_out)
    else:
        return None
    if not d.is_crossing(v) or len(d.darts_at(v)) != 4:
        return None
    arcs = {a.arc_of(t_in), a.arc_of(t_out)}
    if {d.dart_edge[x] for x in d.darts_at(v)} != arcs:
        return None
    f0 = d.face_of[t_in]
    f2 = a.across(t_out)
    f1 = a.across(t_in)
    around = {d.face_of[x] for x in d.darts_at(v)}
    rest = around - {f0, f1, f2}
    if len(rest) != 1:
        return None
    (f3,) = rest
    if f3 == a.outer:
        return None
    # new path crosses the leaving arc first, then the entry arc
    new_in = next(x for x in a.crossing_darts(f0) if a.arc_of(x) == a.arc_of(t_out) and a.across(x) == f3)
    new_out = next(x for x in a.crossing_darts(f3) if a.arc_of(x) == a.arc_of(t_in) and a.across(x) == f2)
    return v, f3, new_in, new_out


def _check_pair(a: Arrangement, p: DualPath, q: DualPath) -> None:
    p.check(a)
    q.check(a)
    if p.faces[0] != q.faces[0] or p.faces[-1] != q.faces[-1]:
        raise DualPathError("paths do not share their end faces")
    for name, x in (("first", p), ("second", q)):
        twice = [arc for arc, c in x.arc_counts(a).items() if c > 1]
        if twice:
            raise DualPathError(f"{name} path crosses {twice[0]} more than once")
    if len(p) != len(q) or set(p.arcs(a)) != set(q.arcs(a)):
        raise DualPathError("paths cross different arcs")


def lenses(p: DualPath, q: DualPath) -> list[tuple[int, int]]:
    """Maximal index ranges ``(i, j)`` where p and q agree at i and j only.

    Both paths cross exactly the arcs separating their ends, so a face common
    to both sits at the same index in each.
    """
    common = [k for k in range(len(p.faces)) if p.faces[k] == q.faces[k]]
    return [(i, j) for i, j in zip(common, common[1:]) if j > i + 1]


def inversions(a: Arrangement, p: DualPath, q: DualPath) -> int:
    """Pairs of arcs met in opposite orders along p and q."""
    pos = {arc: k for k, arc in enumerate(q.arcs(a))}
    seq = [pos[arc] for arc in p.arcs(a)]
    return sum(1 for x, y in itertools.combinations(seq, 2) if x > y)


def sliding_sequence(a: Arrangement, p: DualPath, q: DualPath) -> list[SlideStep]:
    """Slides turning ``p`` into ``q``, each pushing one crossing out of a lens.

    Lenses are handled from the start of ``p``; inside a lens the slide taken
    is the first along ``p`` over a vertex that is the first one met on both
    of its arcs when entering the lens from ``p``.
    """
    _check_pair(a, p, q)
    steps: list[SlideStep] = []
    cur = p
    qpos = {arc: k for k, arc in enumerate(q.arcs(a))}
    for lo, hi in lenses(p, q):
        while cur.faces[lo : hi + 1] != q.faces[lo : hi + 1]:
            step = None
            for i in range(lo, hi - 1):
                t_in, t_out = cur.darts[i], cur.darts[i + 1]
                if qpos[a.arc_of(t_in)] < qpos[a.arc_of(t_out)]:
                    continue
                hit = _corner_slide(a, t_in, t_out)
                if hit is None:
                    continue
                v, f3, n_in, n_out = hit
                step = SlideStep(v, i, cur.faces[i : i + 3], (cur.faces[i], f3, cur.faces[i + 2]), (t_in, t_out), (n_in, n_out))
                break
            if step is None:
                raise DualPathError(f"no vertex can be slid in lens {lo}..{hi}")
            cur = step.apply(cur)
            steps.append(step)
    if cur != q:
        raise DualPathError("sliding did not reach the target path")
    return steps


def replay(p: DualPath, steps: Sequence[SlideStep]) -> DualPath:
    for s in steps:
        p = s.apply(p)
    return p
