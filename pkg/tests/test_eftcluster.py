import dataclasses

import pytest
from hypothesis import given, settings

from conftest import raw_instances, to_hypergraph
from hyperspan.eftcluster import (
    KP,
    PP,
    SD,
    ClusterSpanner,
    Params,
    TripleStatusLedger,
    build,
    count_disjoint_pairs,
    path_count_threshold,
    reseeded,
    size_envelopes,
)
from hyperspan.exceptions import InvariantViolation
from hyperspan.hypercore import HyperPath, Hypergraph, dumps
from hyperspan.instances import random_hypergraph
from hyperspan.verify import replay_invariants, verify_mult


def path(edges, start, end, head):
    return HyperPath(tuple(edges), start, end, frozenset(head))


def test_params_derivations():
    p = Params(k=2, f=1)
    assert p.quota(3) == 60
    assert p.center_probability(16, 3) == pytest.approx(0.25)
    assert p.center_probability(4, 3) == pytest.approx(0.5)
    assert Params(k=2, f=10**6).center_probability(16, 3) == 1.0
    assert p.sample_size(16) == 16
    assert Params(path_quota=5).quota(3) == 5
    for bad in (dict(k=1), dict(f=0), dict(sample_const=0), dict(first_round="x")):
        with pytest.raises((ValueError, TypeError)):
            Params(**bad)


def test_reseed_doubles_sample_and_changes_seed():
    p = Params(seed=3, sample_const=4.0)
    q = reseeded(p)
    assert q.sample_const == 8.0 and q.seed != p.seed
    assert reseeded(p) == q


def test_ledger_statuses_are_monotone():
    L = TripleStatusLedger()
    e = Hypergraph.from_edges(3, [(1, (0, 1, 2))]).edges[0]
    assert L.get(0, 1, 0) == PP
    L.set_sd(1, 0, 0)
    assert L.get(0, 1, 0) == SD and L.get(1, 2, 0) == PP
    assert L.pp_pairs(e) == [(0, 2), (1, 2)]
    L.set_sd(0, 2, 0)
    L.set_sd(1, 2, 0)
    assert L.edge_status(e) == SD
    L.set_kp(5)
    assert L.get(0, 1, 5) == KP
    with pytest.raises(InvariantViolation):
        L.set_sd(0, 1, 5)


def test_single_hyperedge_is_kept():
    H = Hypergraph.from_edges(4, [(3, (0, 2, 3))])
    for k in (2, 3, 4):
        S, _ = build(H, Params(k=k, f=1))
        assert S == H


def test_berge_acyclic_input_is_kept_whole():
    H = Hypergraph.from_edges(9, [(2, (0, 1, 2)), (1, (2, 3)), (4, (3, 4, 5)), (1, (5, 6, 7)), (3, (1, 8))])
    S, _ = build(H, Params(k=2, f=1, seed=5))
    assert S == H


def test_light_triangle_keeps_every_edge():
    H = Hypergraph.from_edges(3, [(1, (0, 1)), (1, (1, 2)), (5, (0, 2))])
    S, stats = build(H, Params(k=2, f=1))
    assert S == H and stats.status_counts == {"kp_edges": 3}


def test_heavy_edge_discarded_only_behind_f_plus_one_covers():
    H = Hypergraph.from_edges(
        3, [(1, (0, 1, 2)), (1, (0, 2)), (5, (0, 2))], allow_multi=True
    )
    S1, st1 = build(H, Params(k=2, f=1))
    assert S1.ids == (0, 1) and st1.status_counts["sd_pairs"] == 1
    S2, _ = build(H, Params(k=2, f=2))
    assert S2 == H


def test_literal_first_round_is_not_fault_tolerant():
    H = Hypergraph.from_edges(2, [(1, (0, 1)), (2, (0, 1))])
    S, _ = build(H, Params(f=1, first_round="literal"))
    assert S.ids == (0,)
    report = verify_mult(H, S, 1, 3)
    assert not report.passed and report.worst.fault_set == {0}
    S, _ = build(H, Params(f=1))
    assert S == H and verify_mult(H, S, 1, 3).passed


def test_random_instance_passes_exhaustive_stretch():
    H = random_hypergraph(14, 30, 3, (1, 10), seed=11)
    S, stats = build(H, Params(k=2, f=1, seed=7))
    assert verify_mult(H, S, 1, 3, "exhaustive").passed
    assert stats.size == S.m and stats.m == 30


@given(raw_instances(n_min=3, n_max=8, m_max=12))
@settings(max_examples=40)
def test_spanner_is_fault_tolerant_on_arbitrary_inputs(inst):
    n, edges = inst
    H = to_hypergraph(n, edges)
    S, stats = build(H, Params(k=2, f=1, seed=len(edges)), trace=True)
    assert S.is_subgraph_of(H)
    replay_invariants(stats)
    assert verify_mult(H, S, 1, 3, "exhaustive").passed


def test_determinism_is_byte_for_byte():
    H = random_hypergraph(20, 60, 3, (1, 10), seed=2)
    a, sa = build(H, Params(seed=9, path_quota=2))
    b, sb = build(H, Params(seed=9, path_quota=2))
    assert dumps(a) == dumps(b)
    assert [dataclasses.replace(i, wall_ms=0) for i in sa.iterations] == \
        [dataclasses.replace(i, wall_ms=0) for i in sb.iterations]


def test_stats_tsv_and_monitors():
    H = random_hypergraph(16, 40, 3, (1, 10), seed=3)
    S, stats = build(H, Params(k=3, f=2, seed=1))
    lines = stats.to_tsv().splitlines()
    assert lines[0] == "i\t|Z_i|\t|V_i|\t|R_i|\tadded_edges\tmax_Pv\twall_ms"
    assert len(lines) == 4
    assert sum(it.added_edges for it in stats.iterations) == S.m
    assert stats.iterations[-1].centers == 0 and stats.iterations[-1].active == 0
    head, body = size_envelopes(16, 3, 3, 2)
    assert head == stats.envelope_headline and body > head
    assert stats.path_count_threshold == path_count_threshold(16, 3, 3, 2) > 0
    assert not stats.warnings


def test_later_iterations_build_multi_hop_paths():
    H = random_hypergraph(14, 30, 3, (1, 10), seed=2)
    S, stats = build(H, Params(k=2, f=1, seed=2, path_quota=1), trace=True)
    it2 = stats.trace.iterations[1]
    assert any(P.hops == 2 for paths in it2.P.values() for P in paths)
    assert replay_invariants(stats).passed
    assert verify_mult(H, S, 1, 3).passed


def test_count_disjoint_pairs():
    a = path([0], 1, 2, {1})
    b = path([1], 3, 2, {3})
    c = path([2], 4, 5, {4})
    assert count_disjoint_pairs([a], [c]) == 0
    assert count_disjoint_pairs([a], [a]) == 1
    assert count_disjoint_pairs([a, b], [path([0, 1], 1, 5, {1})]) == 1
    assert count_disjoint_pairs([a, b], [path([0], 1, 2, {1}), path([1], 3, 2, {3})]) == 2
    with pytest.raises(InvariantViolation):
        count_disjoint_pairs([a, path([0], 6, 2, {6})], [c])
    with pytest.raises(InvariantViolation):
        count_disjoint_pairs([c], [a, path([7], 1, 2, {1})])


def test_estimator_wrapper():
    H = random_hypergraph(12, 25, 3, (1, 5), seed=4)
    est = ClusterSpanner(k=2, f=1, random_state=3, trace=True)
    S = est.fit_transform(H)
    assert est.get_params()["random_state"] == 3
    assert est.trace_ is not None and est.params_.seed == 3
    assert ClusterSpanner(**est.get_params()).fit(H).edge_ids_ == est.edge_ids_
    assert S == est.transform(H)
