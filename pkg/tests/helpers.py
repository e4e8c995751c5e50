"""Shared fixtures-by-function for the test modules: the perturbed corpus and
a few independent oracles."""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache

from goodrawings import convex_drawing, cylindrical_drawing, perturb
from goodrawings.dual import Arrangement, DualPath, DualPathError
from goodrawings.map_core import CrossingData, all_edges, edge
from goodrawings.rotation_facts import K4Rotation

KINDS = {"convex": convex_drawing, "cylindrical": cylindrical_drawing}


@lru_cache(maxsize=None)
def base(kind: str, n: int):
    return KINDS[kind](n)


@lru_cache(maxsize=None)
def corpus(kind: str, n: int, trials: int = 100, k: int = 20):
    """``(seed, d1, d2, moves)`` with d2 = perturb(d1, k, seed)."""
    d1 = base(kind, n)
    out = []
    for seed in range(trials):
        d2, seq = perturb(d1, k, seed)
        out.append((seed, d1, d2, seq))
    return tuple(out)


# ---------------------------------------------------------------------------
# straight-line oracle
# ---------------------------------------------------------------------------


def _ccw(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def segments_cross(a, b, c, d) -> bool:
    return _ccw(a, b, c) * _ccw(a, b, d) < 0 and _ccw(c, d, a) * _ccw(c, d, b) < 0


def straight_line(points: dict[int, tuple[float, float]]):
    """Rotation scheme and crossing pairs of the straight-line drawing."""
    rot = {}
    for v, p in points.items():
        others = [w for w in points if w != v]
        others.sort(key=lambda w: math.atan2(points[w][1] - p[1], points[w][0] - p[0]))
        rot[v] = tuple(others)
    es = all_edges(len(points))
    pairs = set()
    for e, f in itertools.combinations(es, 2):
        if set(e) & set(f):
            continue
        if segments_cross(points[e[0]], points[e[1]], points[f[0]], points[f[1]]):
            pairs.add(frozenset((e, f)))
    return rot, pairs


def _hit(a, b, c, d) -> float:
    """Parameter along ab where it meets cd."""
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    return ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den


def straight_line_data(points: dict[int, tuple[float, float]]):
    """CrossingData and geometric crossing signs of a straight-line drawing."""
    rot, pairs = straight_line(points)
    hits: dict = {e: [] for e in all_edges(len(points))}
    signs = {}
    for pair in pairs:
        e, f = sorted(pair)
        a, b, c, d = (points[v] for v in (*e, *f))
        hits[e].append((_hit(a, b, c, d), f))
        hits[f].append((_hit(c, d, a, b), e))
        # f going right over e means f's head is right of e
        signs[(e, f)] = 1 if _ccw(a, b, d) < 0 else -1
    crossings = {e: tuple(f for _, f in sorted(h)) for e, h in hits.items()}
    return CrossingData(len(points), rot, crossings), signs


def _meet(a, b, c, d):
    t = _hit(a, b, c, d)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def parabola_points(n: int) -> dict[int, tuple[float, float]]:
    """The convex positions used by convex_drawing."""
    return {v: (float(v * v), float(v**4)) for v in range(1, n + 1)}


def geometric_triangle(points: dict[int, tuple[float, float]], trip):
    """Chords through, and vertices inside, the triangle cut out by three
    pairwise crossing segments."""
    es = all_edges(len(points))
    seg = {e: (points[e[0]], points[e[1]]) for e in es}
    x, y, z = trip
    P, Q, R = _meet(*seg[x], *seg[y]), _meet(*seg[x], *seg[z]), _meet(*seg[y], *seg[z])
    sides = ((P, Q), (P, R), (Q, R))
    chords = {e for e in es if e not in trip and any(segments_cross(*seg[e], *side) for side in sides)}
    sgn = _ccw(P, Q, R)
    inside = {
        v for v, p in points.items() if all(_ccw(a, b, p) * sgn > 0 for a, b in ((P, Q), (Q, R), (R, P)))
    }
    return chords, inside, ((P[0] + Q[0] + R[0]) / 3, (P[1] + Q[1] + R[1]) / 3)


def geometric_ready_moves(points: dict[int, tuple[float, float]]) -> set:
    """``(triple, flip)`` for every empty triangle of a straight-line drawing."""
    _, pairs = straight_line(points)
    out = set()
    for trip in itertools.combinations(all_edges(len(points)), 3):
        if not all(frozenset(p) in pairs for p in itertools.combinations(trip, 2)):
            continue
        chords, inside, centre = geometric_triangle(points, trip)
        if chords or inside:
            continue
        a, b = trip[0]
        flip = "ccw" if _ccw(points[a], points[b], centre) > 0 else "cw"
        out.add((trip, flip))
    return out


def random_points(n: int, rng: random.Random) -> dict[int, tuple[float, float]]:
    return {v: (rng.random(), rng.random()) for v in range(1, n + 1)}


K4_POINT_SETS = (
    [(0.0, 0.0), (5.0, 0.3), (4.2, 3.9), (0.4, 3.1)],  # convex
    [(0.0, 0.0), (6.0, 0.0), (2.0, 5.0), (2.6, 1.7)],  # one point inside
)


@lru_cache(maxsize=None)
def geometric_k4_codes() -> dict[int, frozenset | None]:
    """code -> crossing pair (None if planar) over every straight-line K4."""
    seen: dict[int, frozenset | None] = {}
    for pts in K4_POINT_SETS:
        for mirror in (1, -1):
            for perm in itertools.permutations(range(1, 5)):
                points = {perm[k]: (mirror * x, y) for k, (x, y) in enumerate(pts)}
                rot, pairs = straight_line(points)
                code = K4Rotation.induced(rot, (1, 2, 3, 4)).code
                pair = next(iter(pairs)) if pairs else None
                assert seen.setdefault(code, pair) == pair
    return seen


# ---------------------------------------------------------------------------
# dual paths
# ---------------------------------------------------------------------------


def _component(a: Arrangement, start: int, region: set[int], banned: set) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for t in a.crossing_darts(f):
            g = a.across(t)
            if a.arc_of(t) not in banned and g in region and g not in seen:
                seen.add(g)
                stack.append(g)
    return seen


def random_dual_path(a: Arrangement, fa: int, fb: int, rng: random.Random) -> DualPath:
    """Like find_dual_path but crossing a random separating arc each step."""
    region = set(a.faces)
    banned: set = set()
    faces, darts = [fa], []
    cur = fa
    while cur != fb:
        options = []
        for t in a.crossing_darts(cur):
            sigma = a.arc_of(t)
            if sigma in banned or a.across(t) not in region:
                continue
            side = _component(a, fb, region, banned | {sigma})
            if cur not in side and a.across(t) in side:
                options.append((t, side))
        if not options:
            raise DualPathError("stuck")
        t, region = options[rng.randrange(len(options))]
        banned.add(a.arc_of(t))
        darts.append(t)
        cur = a.across(t)
        faces.append(cur)
    return DualPath(tuple(faces), tuple(darts))


def random_hull_arrangement(d, rng: random.Random, min_arcs: int = 1) -> Arrangement:
    n = d.n
    hull = {edge(k, k % n + 1) for k in range(1, n + 1)}
    chords = [e for e in all_edges(n) if e not in hull]
    arcs = rng.sample(chords, rng.randint(min(min_arcs, len(chords)), len(chords)))
    return Arrangement.in_hull(d, arcs)


def six_cycle_crossings(d):
    """Largest number of crossing pairs among the edges of any 6-cycle."""
    n = d.n
    es = all_edges(n)
    index = {e: k for k, e in enumerate(es)}
    adj = [0] * len(es)
    for pair in d.crossing_pairs():
        e, f = tuple(pair)
        adj[index[e]] |= 1 << index[f]
        adj[index[f]] |= 1 << index[e]
    worst = 0
    for six in itertools.combinations(range(1, n + 1), 6):
        first, rest = six[0], six[1:]
        for perm in itertools.permutations(rest):
            if perm[0] > perm[-1]:
                continue  # each cycle once
            cyc = (first,) + perm
            mask = 0
            for k in range(6):
                mask |= 1 << index[edge(cyc[k], cyc[(k + 1) % 6])]
            c = sum(bin(adj[j] & mask).count("1") for j in range(len(es)) if mask >> j & 1) // 2
            worst = max(worst, c)
    return worst
