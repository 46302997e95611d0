import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import oracles
from arcflip import fixtures as F
from arcflip.census import census, shadows
from arcflip.diagram import from_pd, label_to_mask, zero_label_mask
from arcflip.moves import KinunoMove, apply_move, arc_moves, replay
from arcflip.search import LimitExceeded, Strands, bfs_masks
from arcflip.stategraph import (
    AdmissibleTrail,
    MoveError,
    TrailFinder,
    build_state_graph,
    compile_trail,
    components_of,
    degree_check,
    find_admissible_trail,
    generic_trails,
    has_trail,
    is_admissible,
    survey,
)

SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


# the state graph


def test_fig8_state_graph_shape():
    A = build_state_graph(F.fig8())
    assert len(A.vertices) == 16
    assert set(A.outdegree()) == {4}
    ind = A.indegree()
    assert ind[0] == 0 and ind[15] == 0
    assert len(components_of(A)) == 2


def test_fig8_degree_formula_counterexample():
    # label 1000: arc c3 -> c4 passes over c3 itself, adding 1011 as a predecessor
    A = build_state_graph(F.fig8())
    v = int("1000"[::-1], 2)
    assert A.indegree()[v] == 4
    assert sum(m * (m - 1) // 2 for m in A.over_counts[v]) == 3
    preds = sorted(A.name(e.source) for e in A.edges if e.target == v and e.source != v)
    assert "1011" in preds


def test_alternating_trefoil_has_predecessors():
    # the descending-then-ascending unknot diagram 001 reaches the alternating trefoil
    A = build_state_graph(F.trefoil())
    ind = A.indegree()
    assert ind[0] == 3 and ind[7] == 3
    rep = degree_check(A)
    assert {v for v, kind, _, _ in rep.violations} == {"000", "111"}
    assert all(kind == "indegree" for _, kind, _, _ in rep.violations)


def test_components_match_networkx():
    for S in census(5, 3):
        A = build_state_graph(S)
        G = nx.MultiDiGraph()
        G.add_nodes_from(A.vertices)
        G.add_edges_from((e.source, e.target) for e in A.edges)
        ref = sorted(sorted(c) for c in nx.weakly_connected_components(G))
        assert components_of(A) == ref


def test_edges_match_diagram_moves():
    for S in census(4, 2):
        A = build_state_graph(S)
        z = zero_label_mask(S.shadow)
        for label in A.vertices:
            L = S.with_mask(label ^ z)
            want = sorted(apply_move(L, mv).mask ^ z for _, mv in arc_moves(L, 2))
            got = sorted(e.target for e in A.edges if e.source == label)
            assert got == want


def test_one_crossing_shadow_records_both_variants():
    A = build_state_graph(shadows(1)[0])
    assert [(e.source, e.target, e.target_variant_1) for e in A.edges] == [(0, 0, 1), (1, 1, 0)]
    assert A.indegree() == [0, 0]
    assert len(components_of(A)) == 2


def test_dot_output():
    A = build_state_graph(F.fig8())
    dot = A.to_dot()
    assert dot.startswith("digraph A_G {")
    assert '"0000";' in dot and '"1111";' in dot
    assert dot.count("->") == 64
    assert dot == build_state_graph(F.fig8()).to_dot()


def test_limit_and_link_rejection():
    with pytest.raises(LimitExceeded):
        build_state_graph(F.fig8(), limit=3)
    with pytest.raises(Exception):
        build_state_graph(F.hopf())


# admissibility


def test_fig8_1100_pairs():
    L = F.fig8_label("1100")
    verdicts = {S: is_admissible(L, S)[0] for S in itertools.combinations(range(1, 5), 2)}
    assert verdicts == {(1, 2): False, (1, 3): True, (1, 4): True, (2, 3): True, (2, 4): True, (3, 4): False}


def test_kinuno_reaches_what_arc_changes_cannot():
    L = F.fig8_label("1100")
    target = label_to_mask(L.shadow, "0000")
    st_ = Strands(L.shadow)
    acc, _ = bfs_masks(L.mask, lambda m: st_.successors(m, 1))
    assert target not in acc
    seen = {L.mask}
    frontier = [L]
    while frontier:
        nxt = []
        for D in frontier:
            for e in D.shadow.head:
                E = apply_move(D, KinunoMove(e))
                if E.mask not in seen:
                    seen.add(E.mask)
                    nxt.append(E)
        frontier = nxt
    assert target in seen


@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
@SETTINGS
def test_admissible_matches_diagram_bfs(seed, variant):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    S = shadows(n)[int(rng.integers(len(shadows(n))))]
    L = S.with_mask(int(rng.integers(1 << n)))
    reach = oracles.reachable(L, variant)
    for a, b in itertools.combinations(range(n), 2):
        want = L.switched((a, b)).pd() in reach
        ok, log = is_admissible(L, [L.ids[a], L.ids[b]], variant)
        assert ok == want
        if ok:
            assert replay(L, log) == L.switched((a, b))


def test_empty_set_is_admissible_with_empty_log():
    ok, log = is_admissible(F.trefoil(), [])
    assert ok and len(log) == 0


# trails


@pytest.mark.parametrize("make", [F.trefoil, F.fig8, F.knot_8_20])
def test_trails_on_fixtures(make):
    L = make()
    tf = TrailFinder(L)
    for x, y in itertools.combinations(L.ids, 2):
        T = tf.find(x, y)
        ok, _ = is_admissible(L, [x, y])
        assert (T is not None) == ok or not L.is_alternating()
        if T is not None:
            assert replay(L, compile_trail(L, T)) == L.switched((L.index(x), L.index(y)))


def test_trail_turn_annotations():
    L = F.fig8()
    T = find_admissible_trail(L, 1, 2)
    assert T is not None
    assert set(T.turns()) <= {"straight", "left", "right"}
    assert T.vertices()[0] in (1, 2) and T.vertices()[-1] in (1, 2)
    assert str(T).startswith("c")


def test_strict_trails_miss_kinked_alternating_pairs():
    # two kinks in a row: the pair is admissible but no trail avoids its ends
    L = from_pd([(4, 1, 1, 2), (2, 3, 3, 4)])
    L = L.with_mask(zero_label_mask(L.shadow))
    assert L.is_alternating()
    assert is_admissible(L, [1, 2])[0]
    assert not has_trail(L, 0, 1)
    assert has_trail(L, 0, 1, through_ends=True)
    T = find_admissible_trail(L, 1, 2)
    assert T is not None and T.passes_ends()
    assert replay(L, compile_trail(L, T)) == L.switched((0, 1))


def test_relaxed_trail_without_admissibility():
    L = from_pd([(3, 1, 4, 8), (1, 6, 2, 7), (2, 6, 3, 5), (4, 7, 5, 8)])
    assert not is_admissible(L, [1, 2])[0]
    assert not has_trail(L, 0, 1)
    steps = next(generic_trails(L, 0, 1, through_ends=True))
    T = AdmissibleTrail(1, 2, steps, L.shadow)
    assert T.passes_ends()
    with pytest.raises(MoveError):
        compile_trail(L, T)


def test_survey_small_census():
    rows = survey(census(4))
    assert sum(r.trail_not_admissible for r in rows) == 0
    assert sum(r.admissible_without_trail for r in rows) > 0
    relaxed = survey(census(4), through_ends=True)
    assert sum(r.admissible_without_trail for r in relaxed) == 0
    assert all(r.pairs == r.n * (r.n - 1) // 2 for r in rows)


def test_alternating_census_pairs_small():
    for n in range(2, 6):
        for S in shadows(n):
            z = zero_label_mask(S.shadow)
            for mask in (z, z ^ ((1 << n) - 1)):
                L = S.with_mask(mask)
                tf = TrailFinder(L)
                for x, y in itertools.combinations(L.ids, 2):
                    T = tf.find(x, y)
                    assert T is not None
                    keys = tf.compile_keys(T)
                    assert len(keys) >= 1
