"""Reidemeister III moves on good drawings.

A move acts on three pairwise crossing edges that bound an empty triangular
face.  In the crossing lists it is a single adjacent transposition on each of
the three edges; everything else, including the rotation scheme and the set
of crossing pairs, stays put.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

from .map_core import DrawingError, Edge, GoodDrawing, adjacent, edge, iter_regions, rebuild


class MoveError(DrawingError):
    pass


class MoveSequenceError(MoveError):
    def __init__(self, index: int, reason: str) -> None:
        super().__init__(f"move {index}: {reason}")
        self.index = index
        self.reason = reason


def _sense(d: GoodDrawing, darts: Iterable[int]) -> str:
    """``"ccw"`` when the region left of ``darts`` lies left of the smallest
    edge among them (directed from its smaller endpoint), else ``"cw"``."""
    darts = list(darts)
    first = min(d.dart_edge[t] for t in darts)
    t = next(t for t in darts if d.dart_edge[t] == first)
    return "ccw" if d.is_forward(t) else "cw"


@dataclass(frozen=True, order=True)
class Move:
    """Flip of the empty triangle bounded by three edges.

    ``flip`` says on which side of the first edge of the triple (directed from
    its smaller endpoint) the empty triangle lies before the move: ``"ccw"``
    for the left side, ``"cw"`` for the right.  The move carries the triangle
    across to the other side, so the inverse move has the other tag.
    """

    triple: tuple[Edge, Edge, Edge]
    flip: str = "ccw"

    def __post_init__(self) -> None:
        t = tuple(sorted(edge(*e) for e in self.triple))
        if len(set(t)) != 3:
            raise ValueError("a move needs three distinct edges")
        if self.flip not in ("cw", "ccw"):
            raise ValueError(f"flip must be 'cw' or 'ccw', got {self.flip!r}")
        object.__setattr__(self, "triple", t)

    def inverse(self) -> "Move":
        return Move(self.triple, "cw" if self.flip == "ccw" else "ccw")

    def to_json(self) -> dict:
        return {"triple": [list(e) for e in self.triple], "flip": self.flip}

    @classmethod
    def from_json(cls, obj) -> "Move":
        return cls(tuple(tuple(e) for e in obj["triple"]), obj.get("flip", "ccw"))


class MoveSequence(list):
    """List of moves; ``short`` flags a generator that ran out of moves."""

    short = False

    def dumps(self) -> str:
        return json.dumps([m.to_json() for m in self], indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "MoveSequence":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("move file must hold a JSON array")
        return cls(Move.from_json(x) for x in data)


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    """One side of the closed curve formed by three pairwise crossing edges.

    The side is the one next to the crossing of ``anchor[0]`` and
    ``anchor[1]`` facing the third edge (or the opposite side when
    ``reflex``).  All node/face fields refer to the map it was computed on.
    """

    edges: tuple[Edge, Edge, Edge]
    anchor: tuple[Edge, Edge]
    reflex: bool
    faces: frozenset[int]
    corners: tuple[int, int, int]
    interior_nodes: frozenset[int]
    vertices_inside: frozenset[int]
    chords: frozenset[Edge]
    orientation: str
    move_ready: bool

    @property
    def third(self) -> Edge:
        return next(e for e in self.edges if e not in self.anchor)

    @property
    def end_free(self) -> bool:
        ends = {v for e in self.edges for v in e}
        return not (ends & self.vertices_inside)

    @property
    def empty(self) -> bool:
        return not self.interior_nodes and not self.chords

    def move(self) -> Move:
        return Move(self.edges, self.orientation)


def pair_nodes(d: GoodDrawing) -> dict[frozenset[Edge], int]:
    cache = getattr(d, "_pair_nodes", None)
    if cache is None:
        cache = {}
        for e in sorted(d.crossing_data().crossings):
            path = d.edge_path(e)
            for x in path[1:]:
                u = d.dart_origin[x]
                cache.setdefault(frozenset((e, d.crossing_partner(u, e))), u)
        d._pair_nodes = cache  # type: ignore[attr-defined]
    return cache


def _node_index(d: GoodDrawing, e: Edge) -> dict[int, int]:
    path = d.edge_path(e)
    return {d.dart_origin[x]: i for i, x in enumerate(path)}


def _side_darts(d: GoodDrawing, e: Edge, u: int, w: int) -> tuple[list[int], int]:
    """Forward darts of ``e`` between nodes ``u`` and ``w``, and the dart at
    ``u`` pointing towards ``w``."""
    path = d.edge_path(e)
    idx = _node_index(d, e)
    i, j = idx[u], idx[w]
    if i < j:
        darts = path[i:j]
        return darts, path[i]
    darts = path[j:i]
    return darts, d.dart_twin[path[i - 1]]


def triangle_at(d: GoodDrawing, edges: Iterable[Edge], anchor: tuple[Edge, Edge], reflex: bool = False) -> Triangle:
    trip = tuple(sorted(edges))
    x, y = anchor
    (z,) = [e for e in trip if e not in anchor]
    if any(adjacent(a, b) for a, b in itertools.combinations(trip, 2)):
        raise MoveError(f"edges {trip} are not pairwise disjoint")
    pn = pair_nodes(d)
    try:
        X = pn[frozenset((x, y))]
        Y = pn[frozenset((x, z))]
        Z = pn[frozenset((y, z))]
    except KeyError:
        raise MoveError(f"edges {trip} do not pairwise cross") from None
    sx, d1 = _side_darts(d, x, X, Y)
    sy, d2 = _side_darts(d, y, X, Z)
    sz, _ = _side_darts(d, z, Y, Z)
    walls = set(sx) | set(sy) | set(sz)
    if d.dart_next[d1] == d2:
        start, first = d1, True
    elif d.dart_next[d2] == d1:
        start, first = d2, False
    else:
        raise DrawingError("sides of a triangle are not adjacent at its corner")
    if reflex:
        start = d.dart_twin[start]
    f0 = d.face_of[start]
    faces = frozenset(iter_regions(d, f0, walls))
    if d.face_of[d.dart_twin[start]] in faces:
        raise DrawingError(f"triangle {trip} does not separate the sphere")
    boundary_nodes = {d.dart_origin[t] for t in walls} | {d.head(t) for t in walls}
    nodes = set()
    chords = set()
    for f in faces:
        for t in d.faces[f]:
            nodes.add(d.dart_origin[t])
            if t not in walls and d.dart_twin[t] not in walls:
                chords.add(d.dart_edge[t])
    interior = frozenset(nodes - boundary_nodes)
    verts = frozenset(d.node_vertex[u] for u in interior if d.node_vertex[u] is not None)
    region_left = [t for t in walls if d.face_of[t] in faces] + [
        d.dart_twin[t] for t in walls if d.face_of[d.dart_twin[t]] in faces
    ]
    ready = len(faces) == 1 and len(d.faces[f0]) == 3
    return Triangle(
        trip, (x, y), reflex, faces, (X, Y, Z), interior, verts, frozenset(chords), _sense(d, region_left), ready
    )


def _pairwise_crossing_triples(d: GoodDrawing):
    data = d.crossing_data()
    cross = {e: set(lst) for e, lst in data.crossings.items()}
    for e in sorted(cross):
        for f in sorted(cross[e]):
            if f <= e:
                continue
            for g in sorted(cross[e] & cross[f]):
                if g > f:
                    yield (e, f, g)


def find_triangles(d: GoodDrawing) -> list[Triangle]:
    """Every pre-Reidemeister triangle: a side free of the six ends."""
    out = []
    for e, f, g in _pairwise_crossing_triples(d):
        for reflex in (False, True):
            t = triangle_at(d, (e, f, g), (e, f), reflex)
            if t.end_free:
                out.append(t)
    return out


def ready_moves(d: GoodDrawing) -> list[Move]:
    """Moves available right now: triangular faces whose three corners are crossings."""
    moves = []
    for cyc in d.faces:
        if len(cyc) != 3:
            continue
        if any(not d.is_crossing(d.dart_origin[t]) for t in cyc):
            continue
        owners = [d.dart_edge[t] for t in cyc]
        if len(set(owners)) == 3:
            moves.append(Move(tuple(owners), _sense(d, cyc)))
    return sorted(set(moves))


def _triangle_face(d: GoodDrawing, trip: tuple[Edge, Edge, Edge]) -> list[int] | None:
    pn = pair_nodes(d)
    try:
        corners = {pn[frozenset(p)] for p in itertools.combinations(trip, 2)}
    except KeyError:
        return None
    u = next(iter(corners))
    for t in d.darts_at(u):
        cyc = d.faces[d.face_of[t]]
        if len(cyc) == 3 and {d.dart_origin[s] for s in cyc} == corners:
            if {d.dart_edge[s] for s in cyc} == set(trip):
                return cyc
    return None


def apply_move(d: GoodDrawing, m: Move, strict: bool = False) -> GoodDrawing:
    """Flip the empty triangle named by ``m``; returns a new drawing.

    With ``strict`` the recorded flip sense must match the triangle's current
    sense.  The triple alone already identifies the move in a good drawing,
    so by default the tag is informational.
    """
    trip = m.triple
    data = d.crossing_data()
    for a, b in itertools.combinations(trip, 2):
        if adjacent(a, b):
            raise MoveError(f"edges {a} and {b} share an endpoint")
        if b not in data.crossings[a]:
            raise MoveError(f"edges {a} and {b} do not cross")
    cyc = _triangle_face(d, trip)
    if cyc is None:
        raise MoveError(f"triangle {trip} is not empty")
    sense = _sense(d, cyc)
    if strict and sense != m.flip:
        raise MoveError(f"triangle {trip} has sense {sense}, move expects {m.flip}")
    new = dict(data.crossings)
    for a in trip:
        b, c = [x for x in trip if x != a]
        lst = list(new[a])
        i, j = sorted((lst.index(b), lst.index(c)))
        if j != i + 1:
            raise MoveError(f"crossings on {a} are not consecutive")
        lst[i], lst[j] = lst[j], lst[i]
        new[a] = tuple(lst)
    return rebuild(d, new)


def apply_sequence(d: GoodDrawing, seq: Iterable[Move], strict: bool = False) -> GoodDrawing:
    cur = d
    for k, m in enumerate(seq):
        try:
            cur = apply_move(cur, m, strict=strict)
        except MoveError as exc:
            raise MoveSequenceError(k, str(exc)) from None
    return cur
