"""Generators of good drawings of K_n for tests and harnesses."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .map_core import CrossingData, Edge, GoodDrawing, edge, from_crossing_data


def _moment_x(k: int) -> int:
    # Positions on the parabola y = x^2; squares keep the chord arrangement simple
    # (no three chords through one point) for every n we use.
    return k * k


def _chord_orders(labels: Sequence[int]) -> dict[Edge, list[tuple[Fraction, Edge]]]:
    """Crossings among chords of points in convex position.

    ``labels`` lists the points along the boundary.  Point ``t`` sits at
    ``(x_t, x_t^2)``; the chord through points with abscissae a, b lies on
    ``y = (a+b)x - ab``, so two chords meet at ``x = (ab - cd) / (a+b-c-d)``.
    Everything is exact integer arithmetic.
    """
    pos = {v: _moment_x(t + 1) for t, v in enumerate(labels)}
    chords = list(itertools.combinations(labels, 2))
    hits: dict[Edge, list[tuple[Fraction, Edge]]] = {edge(*c): [] for c in chords}
    for c1, c2 in itertools.combinations(chords, 2):
        if set(c1) & set(c2):
            continue
        i1, j1 = sorted(labels.index(v) for v in c1)
        i2, j2 = sorted(labels.index(v) for v in c2)
        if not (i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1):
            continue
        a, b = pos[c1[0]], pos[c1[1]]
        c, d = pos[c2[0]], pos[c2[1]]
        x = Fraction(a * b - c * d, (a + b) - (c + d))
        hits[edge(*c1)].append((x, edge(*c2)))
        hits[edge(*c2)].append((x, edge(*c1)))
    return hits


def _sorted_along(e: Edge, hits: list[tuple[Fraction, Edge]], pos_of_small: Fraction, pos_of_large: Fraction) -> tuple[Edge, ...]:
    keys = [h[0] for h in hits]
    if len(set(keys)) != len(keys):
        raise AssertionError(f"three chords meet in one point on {e}")
    rev = pos_of_small > pos_of_large
    return tuple(f for _, f in sorted(hits, key=lambda h: h[0], reverse=rev))


def convex_drawing(n: int) -> GoodDrawing:
    """Straight-line drawing with vertices 1..n counterclockwise in convex position."""
    if n < 3:
        raise ValueError("need n >= 3")
    labels = list(range(1, n + 1))
    rotation = {k: tuple(labels[k:] + labels[: k - 1]) for k in labels}
    hits = _chord_orders(labels)
    crossings = {}
    for e, lst in hits.items():
        crossings[e] = _sorted_along(e, lst, Fraction(_moment_x(e[0])), Fraction(_moment_x(e[1])))
    return from_crossing_data(CrossingData(n, rotation, crossings))


def _turn(x: Fraction) -> Fraction:
    """Reduce an angle (in full turns) into [-1/2, 1/2)."""
    x = x % 1
    return x - 1 if x >= Fraction(1, 2) else x


def cylindrical_drawing(n: int) -> GoodDrawing:
    """Two-circle construction with crossing number H(n).

    Vertices ``1..p`` (p = ceil(n/2)) sit on an outer circle, ``p+1..n`` on an
    inner circle, both equally spaced counterclockwise, the inner ones turned by
    a fraction of a step.  Edges within a circle are straight chords of the
    disc on their side of the annulus; every spoke between the circles runs
    through the annulus along the shorter angular direction, as a straight
    line in (angle, radius) coordinates.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    p = (n + 1) // 2
    q = n - p
    outer = list(range(1, p + 1))
    inner = list(range(p + 1, n + 1))
    # distinct tiny jitters break the triple points that exact equal spacing creates
    jitter = {v: Fraction(v * v, 1000 * n**4) for v in range(1, n + 1)}
    angle = {v: Fraction(t, p) + jitter[v] for t, v in enumerate(outer)}
    for t, v in enumerate(inner):
        angle[v] = Fraction(2 * t + 1, 2 * q) + Fraction(1, 4 * n * n) + jitter[v]

    def spoke(t: int, b: int) -> Fraction:
        """Angular travel of spoke tb measured from the inner end."""
        d = _turn(angle[t] - angle[b])
        if d == Fraction(-1, 2):
            raise AssertionError("spoke direction is ambiguous")
        return d

    rotation: dict[int, tuple[int, ...]] = {}
    for t in outer:
        chords = sorted((v for v in outer if v != t), key=lambda v: (angle[v] - angle[t]) % 1, reverse=True)
        spokes = sorted(inner, key=lambda b: spoke(t, b))
        rotation[t] = tuple(chords + spokes)
    for b in inner:
        spokes = sorted(outer, key=lambda t: spoke(t, b))
        chords = sorted((v for v in inner if v != b), key=lambda v: (angle[v] - angle[b]) % 1)
        rotation[b] = tuple(spokes + chords)

    crossings: dict[Edge, tuple[Edge, ...]] = {}
    for ring in (outer, inner):
        if len(ring) < 2:
            continue
        # chord crossings inside a disc depend only on the cyclic order of its boundary points
        hits = _chord_orders(ring)
        for e, lst in hits.items():
            crossings[e] = _sorted_along(e, lst, Fraction(_moment_x(ring.index(e[0]) + 1)), Fraction(_moment_x(ring.index(e[1]) + 1)))

    spokes = [(t, b) for t in outer for b in inner]
    hits_h: dict[Edge, list[tuple[Fraction, Edge]]] = {s: [] for s in spokes}
    for s1, s2 in itertools.combinations(spokes, 2):
        if s1[0] == s2[0] or s1[1] == s2[1]:
            continue
        d1, d2 = spoke(*s1), spoke(*s2)
        b1, b2 = angle[s1[1]], angle[s2[1]]
        # theta1(h) = b1 + h d1 meets theta2(h) = b2 + h d2 modulo one turn, 0 < h < 1
        found = []
        if d1 != d2:
            for m in range(-2, 3):
                h = (b2 - b1 + m) / (d1 - d2)
                if 0 < h < 1:
                    found.append(h)
        if len(found) > 1:
            raise AssertionError("spokes cross twice")
        if found:
            hits_h[s1].append((found[0], s2))
            hits_h[s2].append((found[0], s1))
    for s, lst in hits_h.items():
        # spokes run from the outer (smaller) label at h=1 towards h=0
        crossings[s] = _sorted_along(s, lst, Fraction(1), Fraction(0))
    return from_crossing_data(CrossingData(n, rotation, crossings))


def perturb(d: GoodDrawing, k: int, seed: int):
    """Apply ``k`` random Reidemeister moves, each on a currently empty triangle.

    Returns ``(drawing, moves)``; when no move is available the walk stops
    early and ``moves.short`` is set.
    """
    from .moves import MoveSequence, apply_move, ready_moves

    rng = random.Random(seed)
    seq = MoveSequence()
    cur = d
    for _ in range(k):
        options = ready_moves(cur)
        if not options:
            seq.short = True
            break
        m = options[rng.randrange(len(options))]
        cur = apply_move(cur, m)
        seq.append(m)
    return cur, seq
