import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from viralcm.degree_model import make_from_table, make_thinned_poisson
from viralcm.graph import DegreeSequence
from viralcm.oracle import (
    MAX_HALF_EDGES,
    TooLarge,
    all_matchings,
    double_factorial,
    enumerate_exact,
    gw_survival,
)
from viralcm.theory import branching_extinction

from oracles import RHO


def test_single_arc():
    ex = enumerate_exact(DegreeSequence.from_pairs([(0, 1), (1, 0)]))
    assert ex.matchings == 1
    assert ex.reach_prob[0, 1] == 1.0 and ex.reach_prob[1, 0] == 0.0


def test_mutual_influence():
    ex = enumerate_exact(DegreeSequence.from_pairs([(0, 1), (0, 1)]))
    assert ex.matchings == 1
    assert ex.expected_forward_size[0] == 2.0


def test_star_hand_count():
    # self-pairing of the hub's stubs reaches only itself; the other two matchings reach both leaves
    ex = enumerate_exact(DegreeSequence.from_pairs([(0, 2), (1, 0), (1, 0)]))
    assert ex.matchings == 3
    assert ex.expected_forward_size[0] == pytest.approx(7 / 3)


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_exact(DegreeSequence.from_pairs([(1, 1)] * 9))


def test_double_factorial():
    assert [double_factorial(k) for k in (-1, 0, 1, 3, 5, 15)] == [1, 1, 1, 3, 15, 2027025]


@pytest.mark.parametrize("total", [0, 2, 4, 6, 8])
def test_all_matchings_counts(total):
    ms = list(all_matchings(total))
    assert len(ms) == double_factorial(total - 1)
    assert len(set(ms)) == len(ms)
    for m in ms:
        assert sorted(x for pair in m for x in pair) == list(range(total))


small_seqs = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=5).filter(
    lambda ps: sum(a + b for a, b in ps) % 2 == 0 and 0 < sum(a + b for a, b in ps) <= 10
)


@settings(max_examples=40, deadline=None)
@given(small_seqs)
def test_exact_summary_invariants(pairs):
    seq = DegreeSequence.from_pairs(pairs)
    ex = enumerate_exact(seq)
    assert ex.matchings == double_factorial(seq.total_half_edges - 1)
    assert np.all((ex.reach_prob >= 0) & (ex.reach_prob <= 1))
    assert np.all(np.diag(ex.reach_prob) == 1.0)
    assert np.array_equal(ex.reach_prob, ex.source_prob.T)


def test_gw_supercritical():
    tp = make_thinned_poisson(4, 0.5, 30)
    _, p_ext = branching_extinction(tp)
    est = gw_survival(tp, 50, 100_000, seed=3)
    assert abs(est - (1 - p_ext)) <= 0.01
    assert abs(est - RHO) <= 0.01


def test_gw_subcritical():
    assert gw_survival(make_thinned_poisson(4, 0.2, 30), 50, 100_000, seed=4) <= 0.01


def test_gw_no_transmitters():
    assert gw_survival(make_from_table({(1, 0): 1}), 50, 1000, seed=0) == 0.0


def test_gw_rejects_zero_reps():
    with pytest.raises(ValueError):
        gw_survival(make_from_table({(1, 0): 1}), 5, 0, seed=0)


def test_enumeration_cap_value():
    assert MAX_HALF_EDGES == 16
