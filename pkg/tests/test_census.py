import random

import pytest
from hypothesis import given, settings, strategies as st

from arcflip.census import chord_diagrams, map_code, shadows

# Spherical curves with n double points, up to homeomorphism of the sphere
# (OEIS A008989).
KNOWN_COUNTS = {1: 1, 2: 2, 3: 6, 4: 19, 5: 76, 6: 376, 7: 2194}


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_published_sequence(n):
    assert len(shadows(n)) == KNOWN_COUNTS[n]


@pytest.mark.slow
def test_seven_crossing_count():
    assert len(shadows(7)) == KNOWN_COUNTS[7]


def test_shadows_are_knot_shadows():
    for n in range(1, 6):
        for S in shadows(n):
            assert S.num_components == 1
            assert S.n == n
            assert len(S.shadow.faces) == n + 2


def test_codes_are_distinct():
    for n in range(1, 6):
        codes = [map_code(S.pd()) for S in shadows(n)]
        assert len(set(codes)) == len(codes)


def test_chord_diagrams_are_even():
    for n in range(1, 6):
        for partner in chord_diagrams(n):
            assert all((partner[p] - p) % 2 == 1 for p in range(2 * n))


def _relabel(tuples, rng):
    """Same plane map with shuffled crossing order, edge names and frames,
    optionally reflected."""
    edges = sorted({e for t in tuples for e in t})
    names = dict(zip(edges, rng.sample(range(100, 100 + len(edges)), len(edges))))
    reflect = rng.random() < 0.5
    out = []
    for t in tuples:
        t = [names[e] for e in t]
        if reflect:
            t = t[::-1]
        r = rng.randrange(4)
        out.append(tuple(t[r:] + t[:r]))
    rng.shuffle(out)
    return out


@given(st.integers(1, 5), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_map_code_is_invariant(n, seed):
    rng = random.Random(seed)
    S = rng.choice(shadows(n))
    assert map_code(_relabel(list(S.pd()), rng)) == map_code(S.pd())
