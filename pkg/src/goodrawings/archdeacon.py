"""Counting induced nonplanar K4s of a rotation scheme, and a local search.

A K4 with rotation code c is planar exactly when c is 5 or 10 (see
:mod:`goodrawings.rotation_facts`); every other induced K4 counts as
nonplanar here, including the rotations no good drawing realizes.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .map_core import DrawingError, parse_rotation
from .rotation_facts import k4_table

Scheme = dict[int, tuple[int, ...]]

_PLANAR_CODES = frozenset(c for c, entry in enumerate(k4_table()) if entry.planar)


def harary_hill(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2) // 4


def convex_scheme(n: int) -> Scheme:
    """Rotation of points 1..n counterclockwise in convex position."""
    labels = list(range(1, n + 1))
    return {k: tuple(labels[k:] + labels[: k - 1]) for k in labels}


def random_scheme(n: int, seed: int) -> Scheme:
    rng = random.Random(seed)
    out = {}
    for k in range(1, n + 1):
        others = [v for v in range(1, n + 1) if v != k]
        rng.shuffle(others)
        out[k] = tuple(others)
    return out


def load_scheme(text: str) -> Scheme:
    obj = json.loads(text)
    n = int(obj["n"])
    return parse_rotation(n, obj["rotation"])


def dump_scheme(s: Mapping[int, Sequence[int]]) -> str:
    obj = {"n": len(s), "rotation": [{"vertex": k, "ccw": list(s[k])} for k in sorted(s)]}
    return json.dumps(obj, indent=1) + "\n"


def _positions(s: Mapping[int, Sequence[int]], n: int) -> list[list[int]]:
    pos = [[-1] * (n + 1) for _ in range(n + 1)]
    for k, cyc in s.items():
        for t, v in enumerate(cyc):
            pos[k][v] = t
    return pos


def _bit(p: list[int], x: int, y: int, z: int) -> int:
    a, b, c = p[x], p[y], p[z]
    return 1 if (a < b) + (b < c) + (c < a) == 2 else 0


def _code(pos: list[list[int]], quad: Sequence[int]) -> int:
    a, b, c, d = quad
    return (
        _bit(pos[a], b, c, d)
        | _bit(pos[b], a, c, d) << 1
        | _bit(pos[c], a, b, d) << 2
        | _bit(pos[d], a, b, c) << 3
    )


def count_nonplanar_k4(s: Mapping[int, Sequence[int]]) -> int:
    n = len(s)
    if sorted(s) != list(range(1, n + 1)):
        raise DrawingError("scheme must list vertices 1..n")
    pos = _positions(s, n)
    return sum(1 for q in itertools.combinations(range(1, n + 1), 4) if _code(pos, q) not in _PLANAR_CODES)


@dataclass
class SchemeScore:
    scheme: Scheme
    count: int
    proposals: int = 0
    accepted: int = 0
    # (proposal index, count) each time the accepted count changed
    trajectory: list[tuple[int, int]] = field(default_factory=list)
    # counts seen below the Harary-Hill number; the conjecture says there are none
    below_bound: list[int] = field(default_factory=list)


class _Climber:
    """Scheme with incremental nonplanar-K4 count under adjacent swaps."""

    def __init__(self, s: Mapping[int, Sequence[int]]) -> None:
        self.n = len(s)
        self.rot = {k: list(v) for k, v in s.items()}
        self.pos = _positions(s, self.n)
        self.count = count_nonplanar_k4(s)

    def swap_delta(self, k: int, p: int) -> int:
        """Change in the count if entries p and p+1 (cyclically) of rho(k) swap.

        Only the quadruples holding k and both swapped vertices see a new
        local order, and in each of those only the bit at k flips.
        """
        cyc = self.rot[k]
        a, b = cyc[p], cyc[(p + 1) % len(cyc)]
        pos = self.pos
        delta = 0
        for z in range(1, self.n + 1):
            if z in (k, a, b):
                continue
            quad = sorted((k, a, b, z))
            old = _code(pos, quad)
            new = old ^ (1 << quad.index(k))
            delta += (new not in _PLANAR_CODES) - (old not in _PLANAR_CODES)
        return delta

    def swap(self, k: int, p: int, delta: int) -> None:
        cyc = self.rot[k]
        q = (p + 1) % len(cyc)
        a, b = cyc[p], cyc[q]
        cyc[p], cyc[q] = b, a
        self.pos[k][a], self.pos[k][b] = q, p
        self.count += delta

    def scheme(self) -> Scheme:
        return {k: tuple(v) for k, v in sorted(self.rot.items())}


def hill_climb(
    s: Mapping[int, Sequence[int]],
    seed: int,
    budget: int,
    stop_at: int | None = None,
) -> SchemeScore:
    """Random adjacent swaps in local rotations, kept whenever the count does
    not go up.  Stops after ``budget`` proposals or once the count reaches
    ``stop_at``."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    rng = random.Random(seed)
    c = _Climber(s)
    n = c.n
    bound = harary_hill(n)
    best = SchemeScore(c.scheme(), c.count, trajectory=[(0, c.count)])
    if n < 4:
        return best
    for step in range(1, budget + 1):
        if stop_at is not None and c.count <= stop_at:
            break
        k = rng.randint(1, n)
        p = rng.randrange(n - 1)
        delta = c.swap_delta(k, p)
        best.proposals = step
        if delta > 0:
            continue
        c.swap(k, p, delta)
        best.accepted += 1
        if delta:
            best.trajectory.append((step, c.count))
            if c.count < bound:
                best.below_bound.append(c.count)
        if c.count < best.count:
            best.count = c.count
            best.scheme = c.scheme()
    return best


def best_of_restarts(n: int, restarts: int, budget: int, seed: int = 0, start: Scheme | None = None, stop_at: int | None = None) -> list[SchemeScore]:
    s = start if start is not None else convex_scheme(n)
    return [hill_climb(s, seed + r, budget, stop_at) for r in range(restarts)]


def max_count(n: int) -> int:
    return comb(n, 4)
