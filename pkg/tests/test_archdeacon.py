from __future__ import annotations

import itertools
import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodrawings import K4Rotation, convex_scheme, count_nonplanar_k4, harary_hill, hill_climb
from goodrawings.archdeacon import _Climber, best_of_restarts, dump_scheme, load_scheme, max_count, random_scheme

from helpers import base, geometric_k4_codes

# frozen from an exhaustive pass over all 6^5 rotation schemes of K5
K5_DISTRIBUTION = {1: 30, 2: 120, 3: 1080, 4: 2220, 5: 4326}


def slow_count(s) -> int:
    planar = {c for c, pair in geometric_k4_codes().items() if pair is None}
    return sum(1 for q in itertools.combinations(sorted(s), 4) if K4Rotation.induced(s, q).code not in planar)


def test_harary_hill_values():
    assert [harary_hill(n) for n in range(1, 13)] == [0, 0, 0, 0, 1, 3, 9, 18, 36, 60, 100, 150]
    with pytest.raises(ValueError):
        harary_hill(0)


@pytest.mark.parametrize("n", range(4, 11))
def test_convex_count(n):
    assert count_nonplanar_k4(convex_scheme(n)) == comb(n, 4) == max_count(n)


@pytest.mark.parametrize("n", range(4, 10))
def test_cylindrical_count(n):
    d = base("cylindrical", n)
    assert count_nonplanar_k4(d.crossing_data().rotation) == harary_hill(n) == d.num_crossings()


def test_k5_exhaustive():
    others = {k: [v for v in range(1, 6) if v != k] for k in range(1, 6)}
    # fix the first neighbour of each vertex; the 3! orders of the rest give every cycle
    choices = [[(o[0],) + p for p in itertools.permutations(o[1:])] for o in others.values()]
    seen = Counter()
    for combo in itertools.product(*choices):
        s = dict(zip(range(1, 6), combo))
        c = count_nonplanar_k4(s)
        seen[c] += 1
    assert dict(seen) == K5_DISTRIBUTION
    assert min(seen) == harary_hill(5)


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10**6))
def test_count_matches_slow_count(n, seed):
    s = random_scheme(n, seed)
    assert count_nonplanar_k4(s) == slow_count(s)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10**6))
def test_incremental_recount(n, seed):
    rng = random.Random(seed)
    c = _Climber(random_scheme(n, seed))
    for _ in range(60):
        k, p = rng.randint(1, n), rng.randrange(n - 1)
        delta = c.swap_delta(k, p)
        c.swap(k, p, delta)
        assert c.count == count_nonplanar_k4(c.scheme())


def test_hill_climb_never_goes_up():
    res = hill_climb(convex_scheme(7), seed=3, budget=5000)
    counts = [c for _, c in res.trajectory]
    assert all(b <= a for a, b in zip(counts, counts[1:]))
    assert res.count == count_nonplanar_k4(res.scheme) <= comb(7, 4)
    assert res.proposals == 5000
    assert not res.below_bound


def test_hill_climb_from_optimum_stays():
    s = base("cylindrical", 7).crossing_data().rotation
    res = hill_climb(s, seed=0, budget=2000)
    assert res.count == harary_hill(7)


def test_stop_at():
    res = hill_climb(convex_scheme(6), seed=0, budget=100000, stop_at=10)
    assert res.count <= 10 and res.proposals < 100000


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        hill_climb(convex_scheme(5), seed=0, budget=0)


def test_restarts_use_consecutive_seeds():
    runs = best_of_restarts(6, 3, 500, seed=10)
    assert [r.count for r in runs] == [hill_climb(convex_scheme(6), s, 500).count for s in (10, 11, 12)]


def test_small_n_reach_bound():
    assert min(r.count for r in best_of_restarts(5, 8, 100000, stop_at=1)) == 1
    assert min(r.count for r in best_of_restarts(6, 8, 100000, stop_at=3)) == 3


def test_scheme_json_round_trip():
    s = random_scheme(6, 1)
    back = load_scheme(dump_scheme(s))
    assert count_nonplanar_k4(back) == count_nonplanar_k4(s)
    assert {k: tuple(v) for k, v in back.items()} == {k: tuple(v) for k, v in s.items()}
