from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from viralcm.degree_model import make_from_table, make_thinned_poisson
from viralcm.graph import (
    DegreeSequence,
    from_matching,
    influence_digraph,
    multigraph_stats,
    read_edge_list,
    sample_degree_sequence,
    uniform_matching,
    write_edge_list,
)
from viralcm.oracle import enumerate_exact

seqs = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=30).filter(
    lambda ps: sum(a + b for a, b in ps) % 2 == 0 and sum(a + b for a, b in ps) > 0
)


def test_sample_even_deterministic_pmf():
    seq = sample_degree_sequence(make_from_table({(1, 0): 1}), 4, seed=1)
    assert seq.pairs() == [(1, 0)] * 4
    assert seq.total_half_edges == 4 and seq.parity_vertex is None


def test_sample_parity_fix():
    seq = sample_degree_sequence(make_from_table({(1, 0): 1}), 3, seed=1)
    assert seq.total_half_edges == 4
    assert sorted(seq.pairs()) == [(1, 0), (1, 0), (2, 0)]
    assert seq.d_r[seq.parity_vertex] == 2
    assert seq.d_t.sum() == 0


def test_sample_deterministic_given_seed():
    dist = make_thinned_poisson(4, 0.5, 30)
    a = sample_degree_sequence(dist, 1000, seed=9)
    b = sample_degree_sequence(dist, 1000, seed=9)
    assert np.array_equal(a.d_r, b.d_r) and np.array_equal(a.d_t, b.d_t)


@pytest.mark.slow
def test_empirical_counts_concentrate():
    dist = make_thinned_poisson(4, 0.5, 30)
    n = 100_000
    good = 0
    for seed in range(100):
        seq = sample_degree_sequence(dist, n, seed)
        counts = seq.counts()
        dev = max(abs(counts.get(kl, 0) / n - p) for kl, p in dist.items())
        good += dev < 0.01
        assert sum(counts.values()) == n
    assert good >= 99


def test_unique_matching():
    seq = DegreeSequence.from_pairs([(0, 1), (1, 0)])
    g = uniform_matching(seq, seed=3)
    assert g.matching_key() == ((0, 1),)
    d = influence_digraph(g)
    assert list(zip(d.src.tolist(), d.dst.tolist())) == [(0, 1)]


def test_self_loop():
    g = uniform_matching(DegreeSequence.from_pairs([(0, 2)]), seed=0)
    d = influence_digraph(g)
    assert list(zip(d.src.tolist(), d.dst.tolist())) == [(0, 0), (0, 0)]
    assert multigraph_stats(g).self_loops == 1
    stats = multigraph_stats(uniform_matching(DegreeSequence.from_pairs([(0, 1), (1, 0)]), 0))
    assert (stats.self_loops, stats.multi_edges) == (0, 0)


def test_three_matchings_uniform():
    seq = DegreeSequence.from_pairs([(0, 2), (1, 0), (1, 0)])
    exact = enumerate_exact(seq)
    assert exact.matchings == 3
    draws = 100_000
    freq = Counter(uniform_matching(seq, s).matching_key() for s in range(draws))
    assert set(freq) == set(exact.matching_keys)
    for key in exact.matching_keys:
        assert abs(freq[key] / draws - 1 / 3) < 0.01


@pytest.mark.parametrize("flags,arcs", [
    ((1, 0), [(0, 1)]),
    ((1, 1), [(0, 1), (1, 0)]),
    ((0, 0), []),
])
def test_arc_rules(flags, arcs):
    tu, tv = flags
    seq = DegreeSequence.from_pairs([(1 - tu, tu), (1 - tv, tv)])
    d = influence_digraph(from_matching(seq, [1, 0]))
    assert sorted(zip(d.src.tolist(), d.dst.tolist())) == arcs


def test_bad_matching_rejected():
    seq = DegreeSequence.from_pairs([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        from_matching(seq, [0, 1])


def test_self_loops_small_on_average():
    dist = make_thinned_poisson(4, 0.5, 30)
    loops = []
    for seed in range(20):
        seq = sample_degree_sequence(dist, 100_000, seed)
        loops.append(multigraph_stats(uniform_matching(seq, seed + 1000)).self_loops)
    assert 0 <= np.mean(loops) <= 20


@settings(max_examples=80, deadline=None)
@given(seqs, st.integers(0, 2**32))
def test_matching_and_arc_invariants(pairs, seed):
    seq = DegreeSequence.from_pairs(pairs)
    g = uniform_matching(seq, seed)
    h = np.arange(g.mate.size)
    assert np.all(g.mate[g.mate] == h) and np.all(g.mate != h)
    d = influence_digraph(g)
    assert d.arc_count == int(seq.d_t.sum())
    assert np.array_equal(d.out_degree(), seq.d_t)
    # each arc comes from a transmitter stub matched to a stub of the head vertex
    tx = np.flatnonzero(g.is_transmitter)
    assert np.array_equal(d.dst, g.owner[g.mate[tx]])


@settings(max_examples=40, deadline=None)
@given(seqs, st.integers(0, 2**32))
def test_edge_list_round_trip(tmp_path_factory, pairs, seed):
    seq = DegreeSequence.from_pairs(pairs)
    g = uniform_matching(seq, seed)
    path = tmp_path_factory.mktemp("el") / "edges.txt"
    write_edge_list(g, path)
    seq2, g2 = read_edge_list(path)
    d1, d2 = influence_digraph(g), influence_digraph(g2)
    # isolated trailing vertices are not recoverable from an edge list
    k = seq2.n
    assert np.array_equal(seq2.d_r, seq.d_r[:k]) and np.array_equal(seq2.d_t, seq.d_t[:k])
    assert sorted(zip(d1.src.tolist(), d1.dst.tolist())) == sorted(zip(d2.src.tolist(), d2.dst.tolist()))


def test_parity_adds_a_receiver_stub_only():
    dist = make_from_table({(0, 1): 0.5, (1, 2): 0.5})
    support = set(dist.as_dict())
    fixed = 0
    for seed in range(40):
        seq = sample_degree_sequence(dist, 101, seed)
        assert seq.total_half_edges % 2 == 0
        for v, kl in enumerate(seq.pairs()):
            if v == seq.parity_vertex:
                fixed += 1
                assert (kl[0] - 1, kl[1]) in support
            else:
                assert kl in support
    assert fixed > 0
