"""Planarized combinatorial maps of drawings of complete graphs on the sphere.

A drawing of K_n is stored as a map whose nodes are the n vertices plus one
degree-4 node per crossing.  Darts are directed half-segments; each dart knows
the edge that owns it, its origin node, its reversal partner and its
counterclockwise successor at the origin.

The interchange form is :class:`CrossingData`: the rotation scheme plus, for
every edge, the ordered list of edges it crosses.  Together with the crossing
signs (which the rotation scheme determines) this fixes the map up to an
orientation-preserving homeomorphism of the sphere.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class DrawingError(ValueError):
    """Raised when a map or crossing data does not describe a good drawing."""


def edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


def all_edges(n: int) -> list[Edge]:
    return list(itertools.combinations(range(1, n + 1), 2))


def adjacent(e: Edge, f: Edge) -> bool:
    return e[0] in f or e[1] in f


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so that its smallest entry comes first."""
    if not seq:
        return ()
    k = seq.index(min(seq))
    return tuple(seq[k:]) + tuple(seq[:k])


# ---------------------------------------------------------------------------
# Crossing data (the serialization)
# ---------------------------------------------------------------------------


@dataclass(eq=True)
class CrossingData:
    """Rotation scheme plus per-edge crossing orders.

    ``rotation[k]`` is the counterclockwise cyclic order of the other vertices
    around ``k``, stored starting from its smallest entry.  ``crossings[e]``
    lists the edges crossed by ``e`` while walking from its smaller endpoint.
    """

    n: int
    rotation: dict[int, tuple[int, ...]]
    crossings: dict[Edge, tuple[Edge, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.rotation = {k: canonical_cycle(list(v)) for k, v in sorted(self.rotation.items())}
        cr = {e: () for e in all_edges(self.n)}
        for e, lst in self.crossings.items():
            cr[edge(*e)] = tuple(edge(*f) for f in lst)
        self.crossings = cr

    def crossing_pairs(self) -> set[frozenset[Edge]]:
        return {frozenset((e, f)) for e, lst in self.crossings.items() for f in lst}

    def restrict(self, edges: Iterable[Edge]) -> dict[Edge, tuple[Edge, ...]]:
        """Crossing lists of the sub-drawing formed by ``edges``."""
        keep = set(edges)
        return {e: tuple(f for f in self.crossings[e] if f in keep) for e in sorted(keep)}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rotation": [{"vertex": k, "ccw": list(self.rotation[k])} for k in range(1, self.n + 1)],
            "crossings": [
                {"edge": list(e), "crosses": [list(f) for f in self.crossings[e]]}
                for e in all_edges(self.n)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, obj: Mapping) -> "CrossingData":
        n = int(obj["n"])
        rotation = parse_rotation(n, obj["rotation"])
        crossings: dict[Edge, tuple[Edge, ...]] = {}
        for entry in obj.get("crossings", []):
            i, j = entry["edge"]
            if not i < j:
                raise DrawingError(f"edge {entry['edge']} not written with i<j")
            crossings[(i, j)] = tuple(edge(*f) for f in entry["crosses"])
        return cls(n, rotation, crossings)

    @classmethod
    def loads(cls, text: str) -> "CrossingData":
        return cls.from_json(json.loads(text))


def parse_rotation(n: int, block: Sequence[Mapping]) -> dict[int, tuple[int, ...]]:
    rotation = {int(r["vertex"]): tuple(int(x) for x in r["ccw"]) for r in block}
    check_rotation(n, rotation)
    return rotation


def check_rotation(n: int, rotation: Mapping[int, Sequence[int]]) -> None:
    if set(rotation) != set(range(1, n + 1)):
        raise DrawingError("rotation must list every vertex 1..n exactly once")
    for k, cyc in rotation.items():
        if sorted(cyc) != [v for v in range(1, n + 1) if v != k]:
            raise DrawingError(f"rotation at {k} is not a permutation of the other vertices")


# ---------------------------------------------------------------------------
# The map
# ---------------------------------------------------------------------------


class GoodDrawing:
    """Planarized map of a drawing of K_n.

    Nodes ``0..n-1`` are the vertices ``1..n``; higher nodes are crossings.
    The constructor accepts arbitrary dart data; use :func:`validate` to check
    it, or build maps through :func:`from_crossing_data`.
    """

    def __init__(
        self,
        n: int,
        node_vertex: list[int | None],
        dart_edge: list[Edge],
        dart_origin: list[int],
        dart_twin: list[int],
        dart_next: list[int],
    ) -> None:
        self.n = n
        self.node_vertex = node_vertex
        self.dart_edge = dart_edge
        self.dart_origin = dart_origin
        self.dart_twin = dart_twin
        self.dart_next = dart_next
        self._prev: list[int] | None = None
        self._faces: list[list[int]] | None = None
        self._face_of: list[int] | None = None
        self._paths: dict[Edge, list[int]] | None = None
        self._data: CrossingData | None = None
        self._signs: dict[tuple[Edge, Edge], int] | None = None

    # -- basic structure ----------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.node_vertex)

    @property
    def num_darts(self) -> int:
        return len(self.dart_edge)

    def vertex_node(self, v: int) -> int:
        return v - 1

    def is_crossing(self, node: int) -> bool:
        return self.node_vertex[node] is None

    @property
    def prev(self) -> list[int]:
        if self._prev is None:
            prev = [0] * self.num_darts
            for d, nx in enumerate(self.dart_next):
                prev[nx] = d
            self._prev = prev
        return self._prev

    def darts_at(self, node: int) -> list[int]:
        """Darts leaving ``node`` in counterclockwise order."""
        start = self.node_darts[node]
        if start is None:
            return []
        out = [start]
        d = self.dart_next[start]
        while d != start:
            out.append(d)
            d = self.dart_next[d]
            if len(out) > self.num_darts:
                raise DrawingError(f"rotation at node {node} does not close up")
        return out

    @property
    def node_darts(self) -> list[int | None]:
        first: list[int | None] = [None] * self.num_nodes
        for d in range(self.num_darts - 1, -1, -1):
            first[self.dart_origin[d]] = d
        return first

    def head(self, d: int) -> int:
        return self.dart_origin[self.dart_twin[d]]

    def face_next(self, d: int) -> int:
        """Next dart along the face lying to the left of ``d``."""
        return self.prev[self.dart_twin[d]]

    # -- faces ----------------------------------------------------------------

    @property
    def faces(self) -> list[list[int]]:
        if self._faces is None:
            self._faces, self._face_of = _trace(self.num_darts, self.face_next)
        return self._faces

    @property
    def face_of(self) -> list[int]:
        """Index of the face lying to the left of each dart."""
        self.faces
        assert self._face_of is not None
        return self._face_of

    def face_nodes(self, f: int) -> set[int]:
        return {self.dart_origin[d] for d in self.faces[f]}

    def num_segments(self) -> int:
        return self.num_darts // 2

    def euler_characteristic(self) -> int:
        return self.num_nodes - self.num_segments() + len(self.faces)

    # -- edges ----------------------------------------------------------------

    def edge_path(self, e: Edge) -> list[int]:
        """Forward darts of ``e`` from its smaller endpoint to the larger one."""
        if self._paths is None:
            self._paths = {}
        if e not in self._paths:
            self._paths[e] = self._walk_edge(e)
        return self._paths[e]

    def _walk_edge(self, e: Edge) -> list[int]:
        start = self.vertex_node(e[0])
        first = [d for d in self.darts_at(start) if self.dart_edge[d] == e]
        if len(first) != 1:
            raise DrawingError(f"edge {e} does not leave vertex {e[0]} exactly once")
        path = [first[0]]
        d = first[0]
        while True:
            u = self.head(d)
            if not self.is_crossing(u):
                if self.node_vertex[u] != e[1]:
                    raise DrawingError(f"edge {e} ends at {self.node_vertex[u]}, not {e[1]}")
                return path
            t = self.dart_twin[d]
            d = self.dart_next[self.dart_next[t]]
            if self.dart_edge[d] != e:
                raise DrawingError(f"edge {e} does not pass straight through crossing node {u}")
            path.append(d)
            if len(path) > self.num_darts:
                raise DrawingError(f"edge {e} runs in a cycle")

    def is_forward(self, x: int) -> bool:
        """Whether dart ``x`` points from the smaller endpoint of its edge to the larger."""
        fwd = getattr(self, "_forward", None)
        if fwd is None:
            fwd = set()
            for e in {self.dart_edge[t] for t in range(self.num_darts)}:
                fwd.update(self.edge_path(e))
            self._forward = fwd
        return x in fwd

    def crossing_partner(self, node: int, e: Edge) -> Edge:
        for d in self.darts_at(node):
            if self.dart_edge[d] != e:
                return self.dart_edge[d]
        raise DrawingError(f"node {node} is not a crossing of {e}")

    def crossing_node(self, e: Edge, f: Edge) -> int:
        for d in self.edge_path(e)[1:]:
            u = self.dart_origin[d]
            if self.crossing_partner(u, e) == f:
                return u
        raise KeyError(f"{e} and {f} do not cross")

    def crossing_pairs(self) -> set[frozenset[Edge]]:
        pairs = set()
        for u in range(self.num_nodes):
            if self.is_crossing(u):
                pairs.add(frozenset(self.dart_edge[d] for d in self.darts_at(u)))
        return pairs

    def num_crossings(self) -> int:
        return sum(1 for u in range(self.num_nodes) if self.is_crossing(u))

    # -- canonical data -------------------------------------------------------

    def crossing_data(self) -> CrossingData:
        if self._data is None:
            report = validate(self)
            if report:
                raise DrawingError("invalid drawing: " + "; ".join(report.violations))
            self._data = _read_crossing_data(self)
        return self._data

    def __repr__(self) -> str:
        return f"GoodDrawing(n={self.n}, crossings={self.num_crossings()})"


def _trace(num_darts: int, step) -> tuple[list[list[int]], list[int]]:
    face_of = [-1] * num_darts
    faces: list[list[int]] = []
    for d0 in range(num_darts):
        if face_of[d0] != -1:
            continue
        cyc = []
        d = d0
        while face_of[d] == -1:
            face_of[d] = len(faces)
            cyc.append(d)
            d = step(d)
        if d != d0:
            raise DrawingError("face walk is not a permutation")
        faces.append(cyc)
    return faces, face_of


@dataclass
class Face:
    """A face cycle: darts in walking order and the nodes met on the way."""

    darts: tuple[int, ...]
    nodes: frozenset[int]

    def __len__(self) -> int:
        return len(self.darts)


def trace_faces(d: GoodDrawing) -> list[Face]:
    _check_darts(d)
    return [Face(tuple(c), frozenset(d.dart_origin[x] for x in c)) for c in d.faces]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def _check_darts(d: GoodDrawing) -> None:
    m = d.num_darts
    if not (len(d.dart_origin) == len(d.dart_twin) == len(d.dart_next) == m):
        raise DrawingError("dart arrays have different lengths")
    if sorted(d.dart_next) != list(range(m)):
        raise DrawingError("rotation successor is not a permutation")
    for x in range(m):
        t = d.dart_twin[x]
        if not 0 <= t < m or t == x or d.dart_twin[t] != x:
            raise DrawingError(f"dart {x} has no proper reversal partner")


def validate(d: GoodDrawing) -> ValidationReport:
    """List every way in which ``d`` fails to be a good drawing of K_n."""
    rep = ValidationReport()
    try:
        _check_darts(d)
    except DrawingError as exc:
        rep.add(f"malformed darts: {exc}")
        return rep
    n = d.n
    for x in range(d.num_darts):
        t = d.dart_twin[x]
        if d.dart_edge[t] != d.dart_edge[x]:
            rep.add(f"dart {x} and its reversal have different owners")
        if d.dart_origin[d.dart_next[x]] != d.dart_origin[x]:
            rep.add(f"rotation successor of dart {x} leaves another node")
    if rep:
        return rep
    expected = set(all_edges(n))
    for u in range(d.num_nodes):
        darts = d.darts_at(u)
        at_u = sum(1 for x in range(d.num_darts) if d.dart_origin[x] == u)
        if len(darts) != at_u:
            rep.add(f"rotation at node {u} splits into several cycles")
            continue
        owners = [d.dart_edge[x] for x in darts]
        v = d.node_vertex[u]
        if v is not None:
            if u != v - 1:
                rep.add(f"vertex {v} stored at node {u}")
            want = {edge(v, k) for k in range(1, n + 1) if k != v}
            if len(owners) != n - 1 or set(owners) != want:
                rep.add(f"vertex {v} does not have exactly one dart per incident edge")
        else:
            if len(owners) != 4:
                rep.add(f"crossing node {u} has degree {len(owners)}")
                continue
            a, b = owners[0], owners[1]
            if a == b or owners[2] != a or owners[3] != b:
                rep.add(f"crossing node {u} is not an alternating crossing of two edges")
                continue
            if adjacent(a, b):
                rep.add(f"adjacent edges cross: {a} and {b} at node {u}")
            if a not in expected or b not in expected:
                rep.add(f"crossing node {u} involves an unknown edge")
    if rep:
        return rep
    seen_pairs: dict[frozenset[Edge], int] = {}
    used: set[int] = set()
    for e in sorted(expected):
        try:
            path = d._walk_edge(e)
        except DrawingError as exc:
            rep.add(str(exc))
            continue
        used.update(path)
        used.update(d.dart_twin[x] for x in path)
        for x in path[1:]:
            pair = frozenset((e, d.crossing_partner(d.dart_origin[x], e)))
            seen_pairs[pair] = seen_pairs.get(pair, 0) + 1
    if len(used) != d.num_darts and not rep:
        rep.add("some segments do not lie on any edge path")
    for pair, cnt in seen_pairs.items():
        # each crossing node is visited once from each of its two edges
        if cnt > 2:
            a, b = sorted(pair)
            rep.add(f"edges cross more than once: {a} and {b}")
    if rep:
        return rep
    chi = d.euler_characteristic()
    if chi != 2:
        rep.add(f"not spherical: V - E + F = {chi}")
    return rep


# ---------------------------------------------------------------------------
# Reading and building maps
# ---------------------------------------------------------------------------


def _read_crossing_data(d: GoodDrawing) -> CrossingData:
    rotation = {}
    for v in range(1, d.n + 1):
        darts = d.darts_at(d.vertex_node(v))
        rotation[v] = tuple(k for x in darts for k in d.dart_edge[x] if k != v)
    crossings = {}
    for e in all_edges(d.n):
        path = d.edge_path(e)
        crossings[e] = tuple(d.crossing_partner(d.dart_origin[x], e) for x in path[1:])
    return CrossingData(d.n, rotation, crossings)


def rotation_scheme_of(d: GoodDrawing) -> dict[int, tuple[int, ...]]:
    return d.crossing_data().rotation


def crossing_data_of(d: GoodDrawing) -> CrossingData:
    return d.crossing_data()


def build_map(
    n: int,
    rotation: Mapping[int, Sequence[int]],
    crossings: Mapping[Edge, Sequence[Edge]],
    signs: Mapping[tuple[Edge, Edge], int],
    edges: Iterable[Edge] | None = None,
) -> GoodDrawing:
    """Assemble the planarized map without any checking.

    ``signs[(e, f)]`` for ``e < f`` is +1 when ``f`` crosses ``e`` from left to
    right (both directed from their smaller endpoints) and -1 otherwise.
    ``edges`` restricts the map to a sub-drawing; crossings with omitted
    edges are dropped.
    """
    edge_list = sorted(crossings) if edges is None else sorted(edges)
    keep = set(edge_list)
    node_vertex: list[int | None] = [v for v in range(1, n + 1)]
    dart_edge: list[Edge] = []
    dart_origin: list[int] = []
    dart_twin: list[int] = []
    xnode: dict[frozenset[Edge], int] = {}
    # at each crossing node: edge -> (backward dart, forward dart)
    at_cross: dict[int, dict[Edge, list[int]]] = {}
    at_vertex: dict[int, dict[int, int]] = {v: {} for v in range(1, n + 1)}
    paths: dict[Edge, list[int]] = {}

    for e in edge_list:
        nodes = [e[0] - 1]
        for f in crossings[e]:
            if f not in keep:
                continue
            key = frozenset((e, f))
            if key not in xnode:
                xnode[key] = len(node_vertex)
                node_vertex.append(None)
                at_cross[xnode[key]] = {}
            nodes.append(xnode[key])
        nodes.append(e[1] - 1)
        fwd_path = []
        for a, b in zip(nodes, nodes[1:]):
            fw = len(dart_edge)
            dart_edge += [e, e]
            dart_origin += [a, b]
            dart_twin += [fw + 1, fw]
            fwd_path.append(fw)
            if a >= n:
                at_cross[a].setdefault(e, [None, None])[1] = fw
            if b >= n:
                at_cross[b].setdefault(e, [None, None])[0] = fw + 1
        at_vertex[e[0]][e[1]] = fwd_path[0]
        at_vertex[e[1]][e[0]] = fwd_path[-1] + 1
        paths[e] = fwd_path

    dart_next = [-1] * len(dart_edge)
    for v in range(1, n + 1):
        out = at_vertex[v]
        order = [out[k] for k in rotation[v] if k in out]
        for a, b in zip(order, order[1:] + order[:1]):
            dart_next[a] = b
    for key, u in xnode.items():
        e, f = sorted(key)
        eb, ef = at_cross[u][e]
        fb, ff = at_cross[u][f]
        s = signs.get((e, f), 1)
        order = [ef, fb, eb, ff] if s > 0 else [ef, ff, eb, fb]
        for a, b in zip(order, order[1:] + order[:1]):
            dart_next[a] = b
    d = GoodDrawing(n, node_vertex, dart_edge, dart_origin, dart_twin, dart_next)
    d._paths = paths
    return d


def check_crossing_data(c: CrossingData) -> None:
    """Raise :class:`DrawingError` unless ``c`` is internally consistent."""
    check_rotation(c.n, c.rotation)
    for e, lst in c.crossings.items():
        if len(set(lst)) != len(lst):
            raise DrawingError(f"edge {e} lists some edge twice")
        for f in lst:
            if f not in c.crossings:
                raise DrawingError(f"edge {e} lists unknown edge {f}")
            if adjacent(e, f):
                raise DrawingError(f"edge {e} lists adjacent edge {f}")
            if e not in c.crossings[f]:
                raise DrawingError(f"asymmetric crossing data: {e} lists {f} but not vice versa")


def from_crossing_data(c: CrossingData, signs: Mapping[tuple[Edge, Edge], int] | None = None) -> GoodDrawing:
    """Rebuild the unique map described by ``c``.

    Crossing signs are recomputed from the rotation scheme unless supplied.
    """
    from .rotation_facts import crossing_set_of, crossing_signs

    check_crossing_data(c)
    inferred = crossing_set_of(c.rotation)
    if inferred != c.crossing_pairs():
        raise DrawingError("crossing lists disagree with the crossings forced by the rotation scheme")
    if signs is None:
        signs = crossing_signs(c.rotation, inferred)
    d = build_map(c.n, c.rotation, c.crossings, signs)
    chi = d.euler_characteristic()
    if chi != 2:
        raise DrawingError(f"crossing data is not spherical: V - E + F = {chi}")
    d._data = c
    d._signs = dict(signs)
    return d


def rebuild(d: GoodDrawing, crossings: Mapping[Edge, Sequence[Edge]]) -> GoodDrawing:
    """Map with the same scheme and signs as ``d`` but new crossing orders."""
    base = d.crossing_data()
    signs = d._signs
    if signs is None:
        from .rotation_facts import crossing_signs

        signs = crossing_signs(base.rotation, base.crossing_pairs())
    c = CrossingData(d.n, base.rotation, dict(crossings))
    out = build_map(c.n, c.rotation, c.crossings, signs)
    chi = out.euler_characteristic()
    if chi != 2:
        raise DrawingError(f"crossing data is not spherical: V - E + F = {chi}")
    out._data = c
    out._signs = signs
    return out


def drawings_equivalent(d1: GoodDrawing, d2: GoodDrawing) -> bool:
    """Equal rotation schemes and equal crossing orders on every edge."""
    if d1.n != d2.n:
        raise ValueError("drawings of different complete graphs")
    return d1.crossing_data() == d2.crossing_data()


def iter_regions(d: GoodDrawing, start_face: int, walls: set[int]) -> Iterator[int]:
    """Faces reachable from ``start_face`` without crossing a dart in ``walls``.

    ``walls`` holds dart ids; a segment blocks when either of its darts is in
    the set.
    """
    seen = {start_face}
    stack = [start_face]
    faces = d.faces
    face_of = d.face_of
    while stack:
        f = stack.pop()
        yield f
        for x in faces[f]:
            if x in walls or d.dart_twin[x] in walls:
                continue
            g = face_of[d.dart_twin[x]]
            if g not in seen:
                seen.add(g)
                stack.append(g)
