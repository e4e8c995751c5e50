"""Reidemeister-move sequences between drawings with equal rotation schemes.

Vertices are added one at a time.  Once the drawing ``H`` of K_{i-1} agrees
with the target, each edge ``e = v_j v_i`` is rerouted in turn: its route is
the sequence of ``H``-segments it crosses, written as ``(h, gap)`` where
``gap`` counts the ``H``-edges met on ``h`` before ``e``.  While the route
differs from the target route, ``e`` is slid over a crossing of two
``H``-edges that are consecutive on ``e`` and whose crossing is the first
``H``-crossing on both of them in the direction of the target gaps.  Before
each slide the triangle it sweeps is cleared of other edges by moves that
touch only edges outside ``H`` and the already settled edges at ``v_i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .map_core import DrawingError, Edge, GoodDrawing, build_map, drawings_equivalent, edge, iter_regions, validate
from .moves import MoveSequence, apply_move, pair_nodes, triangle_at

__all__ = ["TransformError", "TransformStats", "drawings_equivalent", "empty_triangle", "gioan_transform"]


class TransformError(DrawingError):
    pass


@dataclass
class TransformStats:
    stages: int = 0
    reroutes: int = 0
    slides: int = 0
    clearing_moves: int = 0
    vertex_checks: int = 0
    face_checks: int = 0
    region_checks: int = 0


def _restricted(d: GoodDrawing, keep: set[Edge]) -> dict[Edge, list[Edge]]:
    data = d.crossing_data()
    return {x: [y for y in data.crossings[x] if y in keep] for x in keep}


def _route(lists: dict[Edge, list[Edge]], e: Edge) -> list[tuple[Edge, int]]:
    return [(h, lists[h].index(e)) for h in lists[e]]


def _vertex_face(d: GoodDrawing, H: set[Edge], signs, i: int) -> int:
    """Face of the drawing of ``H`` containing vertex ``v_i``, as a face index
    of the sub-map (which is identical for drawings agreeing on ``H``)."""
    data = d.crossing_data()
    sub = build_map(d.n, data.rotation, data.crossings, signs, edges=H)
    x = edge(1, i)
    hits = [h for h in data.crossings[x] if h in H]
    if not hits:
        # the edge to v_1 reaches it without crossing H: v_i sits in the angle
        # at v_1 that follows the last H-neighbour before i in the rotation
        rot = data.rotation[1]
        k = rot.index(i)
        prev = next(rot[(k - s) % len(rot)] for s in range(1, len(rot)) if rot[(k - s) % len(rot)] < i)
        return sub.face_of[sub.edge_path(edge(1, prev))[0]]
    h = hits[-1]
    g = sum(1 for y in data.crossings[h][: data.crossings[h].index(x)] if y in H)
    t = sub.edge_path(h)[g]
    s = signs[(h, x)] if h < x else -signs[(x, h)]
    # s > 0: the edge from v_1 crosses h left to right, so v_i sits on the right of h
    return sub.face_of[sub.dart_twin[t]] if s > 0 else sub.face_of[t]


def _h_face_labels(d: GoodDrawing, H: set[Edge]) -> list[int]:
    """For each face of ``d``, the index of the ``H``-face containing it."""
    walls = {x for x in range(d.num_darts) if d.dart_edge[x] in H}
    label = [-1] * len(d.faces)
    k = 0
    for f in range(len(d.faces)):
        if label[f] == -1:
            for g in iter_regions(d, f, walls):
                label[g] = k
            k += 1
    return label


def _segment_darts(d: GoodDrawing, h: Edge, H: set[Edge], gap: int) -> list[int]:
    """Forward darts of ``h`` lying between its H-crossings ``gap - 1`` and ``gap``."""
    out = []
    g = 0
    for k, x in enumerate(d.edge_path(h)):
        if k and d.crossing_partner(d.dart_origin[x], h) in H:
            g += 1
        if g == gap:
            out.append(x)
    return out


def _bfs(d: GoodDrawing, start: int, region: int, labels: list[int], H: set[Edge], goal):
    """Shortest dual path inside one H-face from ``start`` to a face where
    ``goal(face)`` is not None; returns (faces, darts, goal value)."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        hit = goal(f)
        if hit is not None:
            faces, darts = [f], []
            while prev[f] is not None:
                x, f = prev[f]
                darts.append(x)
                faces.append(f)
            return faces[::-1], darts[::-1], hit
        for x in d.faces[f]:
            if d.dart_edge[x] in H:
                continue
            g = d.face_of[d.dart_twin[x]]
            if g not in prev and labels[g] == region:
                prev[g] = (x, f)
                queue.append(g)
    raise TransformError("target route cannot be lifted into the current drawing")


def lift_route(d: GoodDrawing, H: set[Edge], e: Edge, route: list[tuple[Edge, int]]) -> tuple[list[int], list[int]]:
    """Dual path in the full map of ``d`` from the angle of ``e`` at its
    smaller end to its larger end, crossing ``H`` exactly along ``route``."""
    labels = _h_face_labels(d, H)
    cur = d.face_of[d.edge_path(e)[0]]
    faces, darts = [cur], []
    for h, gap in route:
        cands = _segment_darts(d, h, H, gap)
        region = labels[cur]

        def goal(f, cands=cands):
            for x in cands:
                for y in (x, d.dart_twin[x]):
                    if d.face_of[y] == f:
                        return y
            return None

        fs, xs, y = _bfs(d, cur, region, labels, H, goal)
        faces += fs[1:] + [d.face_of[d.dart_twin[y]]]
        darts += xs + [y]
        cur = faces[-1]
    end = d.vertex_node(e[1])
    ends = {d.face_of[x] for x in d.darts_at(end)}
    fs, xs, _ = _bfs(d, cur, labels[cur], labels, H, lambda f: f if f in ends else None)
    return faces + fs[1:], darts + xs


_ROUTE: Edge = (0, 0)


def _with_curve(d: GoodDrawing, e: Edge, faces: list[int], darts: list[int]) -> GoodDrawing:
    """Copy of ``d`` with the dual path drawn in as a curve from e[0] to e[1]."""
    node_vertex = list(d.node_vertex)
    dart_edge = list(d.dart_edge)
    dart_origin = list(d.dart_origin)
    dart_twin = list(d.dart_twin)
    dart_next = list(d.dart_next)

    def new_dart(owner, origin):
        dart_edge.append(owner)
        dart_origin.append(origin)
        dart_twin.append(-1)
        dart_next.append(-1)
        return len(dart_edge) - 1

    nodes = [d.vertex_node(e[0])]
    cross = []
    for t in darts:
        w = len(node_vertex)
        node_vertex.append(None)
        tw = dart_twin[t]
        t2 = new_dart(dart_edge[t], w)
        tw2 = new_dart(dart_edge[t], w)
        # t: a -> w, t2: w -> b, tw: b -> w, tw2: w -> a
        dart_twin[t], dart_twin[tw2] = tw2, t
        dart_twin[t2], dart_twin[tw] = tw, t2
        nodes.append(w)
        cross.append((t2, tw2))
    nodes.append(d.vertex_node(e[1]))
    fwd, bwd = [], []
    for a, b in zip(nodes, nodes[1:]):
        f = new_dart(_ROUTE, a)
        g = new_dart(_ROUTE, b)
        dart_twin[f], dart_twin[g] = g, f
        fwd.append(f)
        bwd.append(g)
    # the path leaves face faces[k] across darts[k]: coming from the left of t
    for k, (t2, tw2) in enumerate(cross):
        order = [t2, bwd[k], tw2, fwd[k + 1]]
        for x, y in zip(order, order[1:] + order[:1]):
            dart_next[x] = y
    first = d.edge_path(e)[0]
    dart_next[fwd[0]] = dart_next[first]
    dart_next[first] = fwd[0]
    last = next(x for x in d.darts_at(d.vertex_node(e[1])) if d.face_of[x] == faces[-1])
    dart_next[bwd[-1]] = dart_next[last]
    dart_next[last] = bwd[-1]
    out = GoodDrawing(d.n, node_vertex, dart_edge, dart_origin, dart_twin, dart_next)
    if out.euler_characteristic() != 2:
        raise TransformError("lifted route does not embed in the sphere")
    return out


def same_region_check(d: GoodDrawing, H: set[Edge], e: Edge, route: list[tuple[Edge, int]]) -> bool:
    """Whether all vertices of ``H`` other than e[0] lie in one region of the
    closed curve formed by ``e`` and the lifted target route."""
    faces, darts = lift_route(d, H, e, route)
    m = _with_curve(d, e, faces, darts)
    walls = {x for x in range(m.num_darts) if m.dart_edge[x] in (e, _ROUTE)}
    verts = sorted({v for h in H for v in h} - {e[0]})
    first = m.face_of[m.node_darts[verts[0] - 1]]
    region = set(iter_regions(m, first, walls))
    return all(m.face_of[x] in region for v in verts for x in m.darts_at(v - 1))


def _signs_of(d: GoodDrawing):
    if d._signs is not None:
        return d._signs
    from .rotation_facts import crossing_signs

    data = d.crossing_data()
    return crossing_signs(data.rotation, data.crossing_pairs())


def empty_triangle(
    d: GoodDrawing,
    edges: tuple[Edge, Edge, Edge],
    anchor: tuple[Edge, Edge],
    protected: set[Edge],
    stats: TransformStats | None = None,
) -> tuple[GoodDrawing, MoveSequence]:
    """Clear the triangle of ``edges`` on the side at the crossing of
    ``anchor`` facing the third edge.

    Every edge passing through it crosses two sides; such an edge is pushed
    over the corner where those two sides meet, after clearing the smaller
    triangle it cuts off there.  Only unprotected edges move.
    """
    seq = MoveSequence()
    cur = _empty(d, tuple(sorted(edges)), anchor, protected, seq, stats, depth=0)
    return cur, seq


def _empty(d, edges, anchor, protected, seq, stats, depth):
    if depth > 200:
        raise TransformError("triangle clearing does not terminate")
    while True:
        t = triangle_at(d, edges, anchor)
        if stats is not None:
            stats.vertex_checks += 1
        if t.vertices_inside:
            raise TransformError(f"vertex {sorted(t.vertices_inside)} inside triangle {edges}")
        if t.move_ready:
            return d
        chords = sorted(t.chords - set(edges))
        bad = [c for c in chords if c in protected]
        if bad:
            raise TransformError(f"protected edge {bad[0]} passes through triangle {edges}")
        if not chords:
            raise TransformError(f"triangle {edges} has interior crossings but no chord")
        data = d.crossing_data()
        pn = pair_nodes(d)
        c = chords[0]
        # sides crossed by c on the triangle itself, not further along
        sides = [
            s
            for s in edges
            if s in data.crossings[c]
            and any(d.dart_edge[x] == c and d.face_of[x] in t.faces for x in d.darts_at(pn[frozenset((c, s))]))
        ]
        if len(sides) != 2:
            raise TransformError(f"edge {c} meets triangle {edges} on {len(sides)} sides")
        s1, s2 = sides
        sub = (c, s1, s2)
        d = _empty(d, tuple(sorted(sub)), (s1, s2), protected, seq, stats, depth + 1)
        m = triangle_at(d, sub, (s1, s2)).move()
        d = apply_move(d, m)
        seq.append(m)
        if stats is not None:
            stats.clearing_moves += 1


def _find_slide(lists, e: Edge, target: dict[Edge, int]):
    route = lists[e]
    for h1, h2 in zip(route, route[1:]):
        if h2 not in lists[h1]:
            continue
        ok = True
        for a, b in ((h1, h2), (h2, h1)):
            lst = lists[a]
            g = lst.index(e)
            want = target[a]
            if want == g:
                ok = False
                break
            # the H-crossing next to e on a, towards the target gap
            k = g + 1 if want > g else g - 1
            if lst[k] != b:
                ok = False
                break
        if ok:
            return h1, h2
    return None


def gioan_transform(
    d1: GoodDrawing,
    d2: GoodDrawing,
    debug: bool = True,
    stats: TransformStats | None = None,
) -> MoveSequence:
    """Moves taking ``d1`` to a drawing equivalent to ``d2``.

    The two drawings must have the same rotation scheme.  With ``debug`` the
    facts the construction relies on are asserted as it runs; a failure raises
    :class:`TransformError`.
    """
    if d1.n != d2.n:
        raise TransformError("drawings of different complete graphs")
    for name, x in (("first", d1), ("second", d2)):
        rep = validate(x)
        if rep:
            raise TransformError(f"{name} drawing is not good: {rep.violations[0]}")
    if d1.crossing_data().rotation != d2.crossing_data().rotation:
        raise TransformError("rotation schemes differ")
    stats = stats if stats is not None else TransformStats()
    n = d1.n
    seq = MoveSequence()
    cur = d1
    signs = _signs_of(d2)
    for i in range(5, n + 1):
        stats.stages += 1
        H = {edge(a, b) for a in range(1, i) for b in range(a + 1, i)}
        if debug:
            if _restricted(cur, H) != _restricted(d2, H):
                raise TransformError(f"K_{i - 1} differs before stage {i}")
            stats.face_checks += 1
            f1 = _vertex_face(cur, H, signs, i)
            f2 = _vertex_face(d2, H, signs, i)
            if f1 != f2:
                raise TransformError(f"vertex {i} lies in different faces of K_{i - 1}")
        settled: set[Edge] = set(H)
        for j in range(1, i):
            e = edge(j, i)
            keep = H | {e}
            target_lists = _restricted(d2, keep)
            target = {h: g for h, g in _route(target_lists, e)}
            if debug:
                now = set(_restricted(cur, keep)[e])
                if now != set(target_lists[e]):
                    raise TransformError(f"edge {e} crosses different edges of K_{i - 1}")
            protected = settled | {e}
            potential = None
            rerouted = False
            while True:
                lists = _restricted(cur, keep)
                if lists[e] == target_lists[e] and all(lists[h].index(e) == target[h] for h in lists[e]):
                    break
                pot = sum(abs(lists[h].index(e) - target[h]) for h in lists[e])
                if potential is not None and pot >= potential:
                    raise TransformError(f"rerouting {e} does not make progress")
                potential = pot
                if debug:
                    stats.region_checks += 1
                    if not same_region_check(cur, H, e, _route(target_lists, e)):
                        raise TransformError(f"vertices of K_{i - 1} are split by the digons of {e}")
                hit = _find_slide(lists, e, target)
                if hit is None:
                    raise TransformError(f"no crossing of K_{i - 1} to slide {e} over")
                h1, h2 = hit
                trip = tuple(sorted((e, h1, h2)))
                cur, clear = empty_triangle(cur, trip, (h1, h2), protected - {e, h1, h2}, stats)
                seq.extend(clear)
                m = triangle_at(cur, trip, (h1, h2)).move()
                cur = apply_move(cur, m)
                seq.append(m)
                stats.slides += 1
                rerouted = True
            stats.reroutes += rerouted
            settled.add(e)
        if debug and _restricted(cur, settled) != _restricted(d2, settled):
            raise TransformError(f"K_{i} differs after stage {i}")
    if not drawings_equivalent(cur, d2):
        raise TransformError("move sequence does not reach the target drawing")
    return seq
