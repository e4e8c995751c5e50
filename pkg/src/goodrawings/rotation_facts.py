"""What a rotation scheme alone says about a drawing.

Every K4 of a good drawing is either planar or has exactly one crossing, and
the local rotations at its four vertices decide which (and in which
direction).  Everything here is read off a 16-entry table, built once by
tracing faces of the candidate planarized K4 maps.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .map_core import Edge, build_map, edge

Scheme = Mapping[int, Sequence[int]]

_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


class CrossingSign(enum.Enum):
    """How a directed edge ``f`` crosses a directed edge ``e``."""

    LEFT_TO_RIGHT = 1
    RIGHT_TO_LEFT = -1

    def flipped(self) -> "CrossingSign":
        return CrossingSign(-self.value)


class Side(enum.Enum):
    """Side of a directed 3-cycle; LEFT of a counterclockwise triangle is its bounded side."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class K4Rotation:
    labels: tuple[int, int, int, int]
    orders: tuple[tuple[int, int, int], ...]

    @classmethod
    def induced(cls, scheme: Scheme, quad: Iterable[int]) -> "K4Rotation":
        labels = tuple(sorted(quad))
        orders = tuple(tuple(x for x in scheme[v] if x in labels) for v in labels)
        return cls(labels, orders)  # type: ignore[arg-type]

    @property
    def code(self) -> int:
        bits = 0
        for t, (v, cyc) in enumerate(zip(self.labels, self.orders)):
            if _is_increasing_cycle(cyc):
                bits |= 1 << t
        return bits


def _is_increasing_cycle(cyc: Sequence[int]) -> bool:
    a, b, c = cyc
    return (a < b) + (b < c) + (c < a) == 2


def _rotation_from_code(code: int) -> dict[int, tuple[int, ...]]:
    rot = {}
    for t in range(4):
        others = [x + 1 for x in range(4) if x != t]
        if not code >> t & 1:
            others = [others[0], others[2], others[1]]
        rot[t + 1] = tuple(others)
    return rot


@dataclass(frozen=True)
class _K4Entry:
    planar: bool
    # crossing pair in local indices 0..3 (each pair sorted, pairs sorted)
    pair: tuple[tuple[int, int], tuple[int, int]] | None
    # +1 if the second edge crosses the first from left to right
    sign: int
    candidates: int


def k4_oracle(code: int) -> _K4Entry:
    """Brute force: try the crossing-free map and every one-crossing map."""
    rot = _rotation_from_code(code)
    es = [edge(a, b) for a, b in itertools.combinations(range(1, 5), 2)]
    plain = build_map(4, rot, {e: () for e in es}, {})
    if plain.euler_characteristic() == 2:
        return _K4Entry(True, None, 0, 0)
    found = []
    for p, q in _PAIRINGS:
        e = (p[0] + 1, p[1] + 1)
        f = (q[0] + 1, q[1] + 1)
        cr = {x: () for x in es}
        cr[e] = (f,)
        cr[f] = (e,)
        for s in (1, -1):
            if build_map(4, rot, cr, {(e, f): s}).euler_characteristic() == 2:
                found.append(((p, q), s))
    if len(found) == 1:
        (pair, s), = found
        return _K4Entry(False, pair, s, 1)
    return _K4Entry(False, None, 0, len(found))


@lru_cache(maxsize=None)
def k4_table() -> tuple[_K4Entry, ...]:
    return tuple(k4_oracle(code) for code in range(16))


def k4_is_planar(r: K4Rotation) -> bool:
    return k4_table()[r.code].planar


def k4_crossing(r: K4Rotation) -> frozenset[Edge] | None:
    """The pair of edges crossing in every drawing realizing ``r``, or None if planar."""
    entry = k4_table()[r.code]
    if entry.planar:
        return None
    if entry.pair is None:
        raise ValueError(f"K4 rotation {r.orders} on {r.labels} is not realized by any good drawing")
    lab = r.labels
    (a, b), (c, d) = entry.pair
    return frozenset((edge(lab[a], lab[b]), edge(lab[c], lab[d])))


def crossing_set_of(scheme: Scheme) -> set[frozenset[Edge]]:
    n = len(scheme)
    table = k4_table()
    out = set()
    for quad in itertools.combinations(range(1, n + 1), 4):
        r = K4Rotation.induced(scheme, quad)
        entry = table[r.code]
        if entry.planar:
            continue
        if entry.pair is None:
            raise ValueError(f"induced K4 on {quad} is not realized by any good drawing")
        (a, b), (c, d) = entry.pair
        out.add(frozenset((edge(quad[a], quad[b]), edge(quad[c], quad[d]))))
    return out


def _base_sign(scheme: Scheme, e: Edge, f: Edge) -> int:
    """Sign of ``f`` crossing ``e`` with both directed from their smaller ends."""
    quad = tuple(sorted(set(e) | set(f)))
    if len(quad) != 4:
        raise ValueError(f"edges {e} and {f} share an endpoint")
    r = K4Rotation.induced(scheme, quad)
    entry = k4_table()[r.code]
    if entry.pair is None:
        raise ValueError(f"edges {e} and {f} do not cross")
    (a, b), (c, d) = entry.pair
    p = edge(quad[a], quad[b])
    q = edge(quad[c], quad[d])
    if {p, q} != {e, f}:
        raise ValueError(f"edges {e} and {f} do not cross")
    # table sign is for q crossing p; swapping roles reverses it
    return entry.sign if (e, f) == (p, q) else -entry.sign


def crossing_sign(scheme: Scheme, e: tuple[int, int], f: tuple[int, int]) -> CrossingSign:
    """Direction in which directed edge ``f`` crosses directed edge ``e``."""
    s = _base_sign(scheme, edge(*e), edge(*f))
    if e[0] > e[1]:
        s = -s
    if f[0] > f[1]:
        s = -s
    return CrossingSign(s)


def crossing_signs(scheme: Scheme, pairs: Iterable[frozenset[Edge]]) -> dict[tuple[Edge, Edge], int]:
    out = {}
    for pair in pairs:
        e, f = sorted(pair)
        out[(e, f)] = _base_sign(scheme, e, f)
    return out


@dataclass(frozen=True)
class TriangleSide:
    side: Side
    minority_edge: Edge | None
    crossed_edge: Edge | None


def _departs_left(scheme: Scheme, at: int, nxt: int, prv: int, x: int) -> bool:
    cyc = [y for y in scheme[at] if y in (nxt, prv, x)]
    k = cyc.index(nxt)
    return cyc[(k + 1) % 3] == x


def triangle_side(scheme: Scheme, t: Sequence[int], x: int) -> TriangleSide:
    """Side of the directed cycle ``t = (u, v, w)`` containing vertex ``x``.

    At each corner the edge towards ``x`` leaves either to the left or to the
    right of the cycle; ``x`` lies on the side chosen by at least two of the
    three edges.  A lone dissenting edge crosses the opposite side.
    """
    u, v, w = t
    if len({u, v, w, x}) != 4:
        raise ValueError("triangle and vertex must be four distinct vertices")
    corners = ((u, v, w), (v, w, u), (w, u, v))
    votes = [_departs_left(scheme, a, b, c, x) for a, b, c in corners]
    left = sum(votes) >= 2
    side = Side.LEFT if left else Side.RIGHT
    minority = [i for i, vote in enumerate(votes) if vote != left]
    if not minority:
        return TriangleSide(side, None, None)
    a, b, c = corners[minority[0]]
    return TriangleSide(side, edge(a, x), edge(b, c))
