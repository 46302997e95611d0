import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

import oracles
from arcflip import fixtures as F
from arcflip.diagram import (
    DiagramError,
    ascending_certificate,
    canonical_text,
    checkerboard_and_label,
    classify_component,
    diagram_from_label,
    felicitous_labeling,
    from_pd,
    is_ascending,
    is_felicitous,
    label_to_mask,
    linking_data,
    over_under_sets,
    parse_diagram,
    serialize,
)

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def random_link(seed, k=None, sx="any", max_crossings=10):
    rng = np.random.default_rng(seed)
    k = k or int(rng.integers(1, 4))
    return F.random_link(rng, k, max_crossings=max_crossings, self_crossing=sx)


# parsing and serialization


def test_trefoil_basics():
    L = F.trefoil()
    assert (L.n, L.num_components) == (3, 1)
    assert L.is_alternating()
    assert L.components == ((1, 2, 3, 4, 5, 6),)
    assert len({L.sign(v) for v in range(3)}) == 1


def test_line_form_round_trip_is_bit_exact():
    text = "# comment\nX 7 1 5 2 4\nX 8 3 1 4 6\nX 9 5 3 6 2\n"
    L = parse_diagram(text)
    assert L.ids == (7, 8, 9)
    assert serialize(L) == "X 7 1 5 2 4\nX 8 3 1 4 6\nX 9 5 3 6 2\n"


def test_compact_form_round_trip():
    text = "X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)\n"
    L = parse_diagram(text)
    assert serialize(L) == text
    assert L.pd() == F.trefoil().pd()


def test_headers_survive_round_trip():
    text = "components: 1 2 3 4 | 5 6 7 8\nouter: 0\nX 1 1 5 2 8\n"
    with pytest.raises(DiagramError):
        parse_diagram(text)  # each edge must appear twice
    L = F.hopf()
    again = parse_diagram(canonical_text(L))
    assert again == L and again.digest == L.digest


@pytest.mark.parametrize(
    "text",
    [
        "X 1 1 2 3\n",
        "X 1 1 1 1 1\n",
        "X 1 4 2 5 1\nX 1 8 6 1 5\nX 3 6 3 7 4\nX 4 2 7 3 8\n",
        "Y 1 2 3 4 5\n",
        "X 1 a b c d\n",
        "X 1 1 5 2 4\nX 2 3 1 4 6\n",
    ],
)
def test_malformed_input_is_rejected(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_empty_and_circle():
    assert from_pd([]).n == 0
    C = F.circle()
    assert (C.n, C.num_components) == (0, 1)
    assert is_ascending(C)


@given(st.integers(0, 10_000))
@SETTINGS
def test_random_round_trip(seed):
    L = random_link(seed)
    again = parse_diagram(canonical_text(L))
    assert again == L
    assert again.digest == L.digest


# orientation, signs and linking numbers against the PD-only oracle


@given(st.integers(0, 10_000))
@SETTINGS
def test_signs_match_oracle(seed):
    L = random_link(seed)
    for v, ref in enumerate(oracles.signs(L)):
        if ref is not None:
            assert L.sign(v) == ref


@given(st.integers(0, 10_000))
@SETTINGS
def test_linking_numbers_match_oracle(seed):
    L = random_link(seed, k=3)
    ld = linking_data(L)
    ref = oracles.linking_matrix(L)
    assume(ref is not None)
    k = L.num_components
    for i in range(k):
        for j in range(i + 1, k):
            assert ld.lk[i][j] == ref[i][j]
    assert ld.under_parity_matches()


def test_hopf_linking():
    ld = linking_data(F.hopf())
    assert abs(ld.lk[0][1]) == 1 and abs(ld.total) == 1
    assert linking_data(F.chain3()).total in (-2, 0, 2)


def test_mirror_negates_signs():
    L = F.trefoil_fig8_link()
    M = L.mirror()
    assert [M.sign(v) for v in range(L.n)] == [-L.sign(v) for v in range(L.n)]


# component structure


def test_over_under_partition():
    L = F.chain3()
    for j in range(3):
        O, U = over_under_sets(L, j)
        mixed = {L.ids[v] for v in range(L.n) if j in L.shadow.strand_comp[v]} - {
            L.ids[v] for v in L.self_crossings(j)
        }
        assert O | U == mixed and not O & U


def test_felicitous_labeling_of_chain():
    L = F.chain3()
    lab = felicitous_labeling(L)
    assert is_felicitous(L, lab.order)
    middle = next(j for j in range(3) if all(L.crossings_between(j, k) for k in range(3) if k != j))
    a, c = (j for j in range(3) if j != middle)
    # taking the middle circle first leaves two disjoint circles behind
    assert not is_felicitous(L, (middle, a, c))
    assert not is_felicitous(L, (middle, c, a))
    assert lab.order[0] != middle
    assert is_felicitous(L, (a, c, middle))


def test_type_c_classification():
    L = F.hopf()
    assert [classify_component(L, j) for j in range(2)] == ["type_C", "type_C"]
    assert classify_component(F.trefoil(), 0) == "has_self_crossings"
    assert {classify_component(F.chain3(), j) for j in range(3)} <= {"type_C", "simple", "plain"}


# ascending diagrams against the brute-force oracle


@given(st.integers(0, 10_000))
@SETTINGS
def test_is_ascending_matches_oracle(seed):
    L = random_link(seed, max_crossings=7)
    assert is_ascending(L) == oracles.ascending(L)
    cert = ascending_certificate(L)
    assert (cert is not None) == is_ascending(L)


def test_trefoil_alternating_is_not_ascending():
    assert not is_ascending(F.trefoil())
    assert not oracles.ascending(F.trefoil())


# labels


def test_fig8_labels_round_trip():
    L = F.fig8()
    lab = checkerboard_and_label(L)
    assert str(lab) in ("0000", "1111")
    for bits in ("1100", "1000", "0110"):
        D = diagram_from_label(L, bits)
        assert str(checkerboard_and_label(D)) == bits
        assert D.mask == label_to_mask(L.shadow, bits)
