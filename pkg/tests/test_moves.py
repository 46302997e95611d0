import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from arcflip import fixtures as F
from arcflip.diagram import is_ascending
from arcflip.moves import (
    AccMove,
    KinunoMove,
    MoveError,
    MoveLog,
    apply_acc,
    apply_kinuno,
    apply_move,
    arc_moves,
    enumerate_arcs,
    replay,
    resolve_arc,
    semi_arc_endpoints,
    successor_masks,
)
from arcflip.search import Strands

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

FIXTURES = {
    "trefoil": F.trefoil,
    "fig8": F.fig8,
    "hopf": F.hopf,
    "kink": F.kink,
    "chain3": F.chain3,
    "trefoil_fig8": F.trefoil_fig8_link,
    "8_19": F.torus_8_19,
    "8_20": F.knot_8_20,
    "8_21": F.knot_8_21,
}


def random_link(seed, max_crossings=10):
    rng = np.random.default_rng(seed)
    return F.random_link(rng, int(rng.integers(1, 4)), max_crossings=max_crossings)


def test_trefoil_arcs():
    got = {(a.start, a.end, a.overs) for a in enumerate_arcs(F.trefoil())}
    assert got == {(1, 2, (3,)), (2, 3, (1,)), (3, 1, (2,))}


def test_fig8_has_four_arcs_each_over_one():
    arcs = enumerate_arcs(F.fig8())
    assert len(arcs) == 4
    assert all(len(a.overs) == 1 for a in arcs)


def test_selector_slots():
    L = F.trefoil()
    assert resolve_arc(L, 1, 2).end == 2
    assert resolve_arc(L, 1, 0).start == 3
    with pytest.raises(MoveError):
        resolve_arc(L, 1, 1)
    with pytest.raises(Exception):
        resolve_arc(L, 9, 2)


def test_acc_switches_both_ends():
    L = F.trefoil()
    M = apply_acc(L, AccMove(1, 2))
    assert [L.under_pair(v) != M.under_pair(v) for v in range(3)] == [True, True, False]
    assert is_ascending(M)


def test_hopf_acc2_is_identity_and_acc1_unlinks():
    L = F.hopf()
    for _, mv in arc_moves(L, 2):
        assert apply_acc(L, mv) == L
    for _, mv in arc_moves(L, 1):
        assert is_ascending(apply_acc(L, mv))


def test_kink_variants_differ():
    L = F.kink()
    (_, mv1), = arc_moves(L, 1)
    (_, mv2), = arc_moves(L, 2)
    assert apply_acc(L, mv2) == L
    assert apply_acc(L, mv1) == L.mirror()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_kinuno_over_semi_arcs_equals_acc2(name):
    L = FIXTURES[name]()
    for arc, mv in arc_moves(L, 2):
        K = L
        for e in arc.edges:
            K = apply_kinuno(K, KinunoMove(e))
        assert K == apply_acc(L, AccMove(mv.crossing, 2, 2))


def test_kinuno_on_loop_edge_is_identity():
    L = F.kink()
    loops = [e for e in L.shadow.head if len(set(semi_arc_endpoints(L, e))) == 1]
    assert loops
    assert apply_kinuno(L, loops[0]) == L


@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
@SETTINGS
def test_mask_successors_match_diagram_moves(seed, variant):
    L = random_link(seed)
    st_ = Strands(L.shadow)
    fast = sorted(m for _, m in st_.successors(L.mask, variant))
    table = sorted(m for _, m in successor_masks(L.shadow, L.mask, variant))
    slow = sorted(apply_move(L, mv).mask for _, mv in arc_moves(L, variant))
    assert fast == slow == table


@given(st.integers(0, 10_000))
@SETTINGS
def test_moves_keep_the_shadow_and_change_at_most_two_crossings(seed):
    L = random_link(seed)
    for _, mv in arc_moves(L, 1):
        M = apply_move(L, mv)
        assert M.shadow is L.shadow
        assert bin(M.mask ^ L.mask).count("1") in (1, 2)


@given(st.integers(0, 10_000))
@SETTINGS
def test_backward_selector_is_forward_selector_of_the_previous_arc(seed):
    L = random_link(seed)
    for arc in enumerate_arcs(L):
        if arc.closed:
            continue
        assert resolve_arc(L, arc.end, 0) == arc


def test_log_text_round_trip_and_replay():
    L = F.fig8()
    log = MoveLog()
    cur = L
    for mv in [AccMove(1, 2, 1), AccMove(3, 0, 2), KinunoMove(4)]:
        cur = log.record(cur, mv)
    text = log.to_text()
    assert text.splitlines()[0].startswith("ACC1 c1.2 @")
    again = MoveLog.from_text(text)
    assert again == log
    assert replay(L, again) == cur
    assert replay(L, again.moves) == cur


def test_replay_detects_wrong_start():
    L = F.fig8()
    log = MoveLog()
    log.record(L, AccMove(1, 2))
    with pytest.raises(MoveError):
        replay(L.mirror(), log)
    replay(L.mirror(), log, check_hashes=False)


@pytest.mark.parametrize("line", ["ACC3 c1.2", "ACC1 1.2", "KIN 4", "ACC1 c1"])
def test_bad_log_lines(line):
    with pytest.raises(MoveError):
        MoveLog.from_text(line)


def test_move_text_forms():
    assert str(AccMove(3)) == "ACC1 c3.2"
    assert str(AccMove(3, 0, 2)) == "ACC2 c3.0"
    assert str(KinunoMove(5)) == "KIN e5"


def test_order_matters_on_trefoil():
    L = F.trefoil()
    moves = [mv for _, mv in arc_moves(L, 1)]
    seen = False
    for a in moves:
        for b in moves:
            ab = apply_move(apply_move(L, a), b)
            ba = apply_move(apply_move(L, b), a)
            seen |= ab != ba
    assert seen
