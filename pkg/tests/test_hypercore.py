import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import raw_instances, to_hypergraph
from hyperspan import exceptions as exc
from hyperspan.hypercore import (
    INF,
    HyperPath,
    Hyperedge,
    Hypergraph,
    all_pairs_distances,
    dumps,
    dumps_faults,
    load,
    loads,
    loads_faults,
    match_subgraph,
    save,
    shortest_distance,
    shortest_path,
)
from hyperspan.instances import random_hypergraph


def dec(d):
    return [[INF if x is None else x for x in row] for row in d]


def test_single_edge_file():
    H = loads("3 1 3\n1.0 0 1 2\n")
    assert H.n == 3 and H.m == 1 and H.rank == 3
    assert H.edges[0] == Hyperedge(0, (0, 1, 2), 1.0)


def test_one_hop_and_disconnection():
    H = Hypergraph.from_edges(3, [(2, (0, 1, 2))])
    assert shortest_distance(H, (), 0, 2) == 2
    assert shortest_distance(H, {0}, 0, 2) == INF
    assert shortest_distance(H, (), 1, 1) == 0


def test_concatenation():
    H = Hypergraph.from_edges(3, [(1, (0, 1)), (3, (1, 2))])
    assert shortest_distance(H, (), 0, 2) == 4


def test_crossing_a_hyperedge_costs_its_weight_once():
    H = Hypergraph.from_edges(5, [(1, (0, 1, 2, 3, 4))])
    assert all(shortest_distance(H, (), 0, v) == 1 for v in range(1, 5))


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("3 1 3\n0.0 0 1\n", exc.NonPositiveWeight, 2),
        ("3 1 3\n-2 0 1\n", exc.NonPositiveWeight, 2),
        ("3 1 3\n1 0 5\n", exc.VertexOutOfRange, 2),
        ("3 1 3\n1 0\n", exc.EdgeTooSmall, 2),
        ("3 1 2\n1 0 1 2\n", exc.RankExceeded, 2),
        ("3 2 3\n1 0 1\n1 1 0\n", exc.DuplicateEdge, 3),
        ("# header next\n3 1 3\n1 0 x\n", exc.MalformedLine, 3),
        ("3 2 3\n1 0 1\n", exc.MalformedLine, 3),
        ("three\n", exc.MalformedLine, 1),
    ],
)
def test_parse_errors_name_the_line(text, error, line):
    with pytest.raises(error) as info:
        loads(text)
    assert info.value.line == line


def test_multi_flag_admits_duplicates():
    H = loads("3 2 3\n1 0 1\n1 0 1\n", allow_multi=True)
    assert H.m == 2
    assert shortest_distance(H, {0}, 0, 1) == 1


def test_comments_and_blank_lines(tmp_path):
    p = tmp_path / "g.hg"
    p.write_text("# a comment\n\n2 1 2\n# inline\n3 1 0\n")
    H = load(p)
    assert H.edges[0].vertices == (0, 1) and H.edges[0].weight == 3


def test_roundtrip_100_random_instances(tmp_path):
    for seed in range(100):
        H = random_hypergraph(9, 12, 3, (1, 9), seed=seed, mixed=True)
        text = dumps(H)
        p = tmp_path / f"{seed}.hg"
        save(loads(text), p)
        assert p.read_text() == text


def test_canonical_order_and_integer_weights():
    H = Hypergraph.from_edges(4, [(2.5, (3, 1)), (1, (2, 0)), (1, (0, 1, 3))])
    assert dumps(H) == "4 3 3\n1 0 1 3\n1 0 2\n2.5 1 3\n"


def test_fault_file_roundtrip():
    H = Hypergraph.from_edges(3, [(1, (0, 1)), (1, (1, 2))])
    assert loads_faults(dumps_faults({1, 0}), H) == {0, 1}
    assert loads_faults("") == frozenset()
    with pytest.raises(exc.MalformedLine):
        loads_faults("0 0")
    with pytest.raises(exc.MalformedLine):
        loads_faults("4", H)


def test_frozen_distances(frozen):
    for case in frozen["distances"]:
        H = to_hypergraph(case["n"], case["edges"])
        assert all_pairs_distances(H) == dec(case["d"])
        assert all_pairs_distances(H, case["removed"]) == dec(case["d_removed"])


@given(raw_instances(), st.data())
def test_matches_floyd_warshall_under_faults(inst, data):
    n, edges = inst
    H = to_hypergraph(n, edges)
    F = data.draw(st.sets(st.integers(0, max(len(edges) - 1, 0)), max_size=2)) if edges else set()
    assert all_pairs_distances(H, F) == oracles.floyd_warshall(n, edges, F)


@given(raw_instances(n_min=3), st.data())
def test_witness_recosts_to_distance(inst, data):
    n, edges = inst
    H = to_hypergraph(n, edges)
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1))
    d = shortest_distance(H, (), u, v)
    P = shortest_path(H, (), u, v)
    if d == INF:
        assert P is None
    else:
        assert P.is_valid(H) and P.start == u and P.end == v
        assert P.weight(H) == d


@given(raw_instances(n_min=3), st.data())
def test_triangle_inequality_and_fault_monotonicity(inst, data):
    n, edges = inst
    H = to_hypergraph(n, edges)
    u, v, w = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert shortest_distance(H, (), u, w) <= shortest_distance(H, (), u, v) + shortest_distance(H, (), v, w)
    F = set(range(0, len(edges), 2))
    assert shortest_distance(H, (), u, v) <= shortest_distance(H, F, u, v)
    assert shortest_distance(H, F, u, v) == shortest_distance(H, F, v, u)


def test_restrict_keeps_host_ids_and_faults_apply_to_both():
    H = Hypergraph.from_edges(4, [(1, (0, 1)), (1, (1, 2)), (1, (2, 3)), (5, (0, 3))])
    S = H.restrict({1, 3})
    assert S.ids == (1, 3)
    assert S.is_subgraph_of(H) and not H.is_subgraph_of(S)
    assert shortest_distance(S, {0, 1}, 0, 3) == 5
    assert shortest_distance(H.without({3}), (), 0, 3) == 3


def test_match_subgraph_rekeys_file_positions():
    H = Hypergraph.from_edges(4, [(1, (0, 1)), (2, (1, 2)), (3, (2, 3))])
    S = loads(dumps(H.restrict({2})))
    assert S.ids == (0,)
    assert match_subgraph(H, S).ids == (2,)
    with pytest.raises(exc.HypergraphError):
        match_subgraph(H, loads("4 1 2\n7 0 3\n"))


def test_hyperpath_heads():
    H = Hypergraph.from_edges(4, [(1, (0, 1)), (2, (1, 2, 3))])
    t = HyperPath.trivial(2)
    assert t.hops == 0 and t.head == frozenset({2}) and t.weight(H) == 0
    P = t.extend(1, 1)
    assert P.head == frozenset({2}) and P.last_edge == 1 and P.end == 1
    Q = HyperPath.from_edges(H, (0, 1), 0, 3)
    assert Q.head == frozenset({0, 1}) and Q.is_valid(H) and Q.weight(H) == 3
    assert not HyperPath.from_edges(H, (1, 0), 0, 3).is_valid(H)


def test_validation_rejects_bad_hyperedges():
    with pytest.raises(exc.HypergraphError):
        Hypergraph.from_edges(2, [(1, (0, 2))])
    with pytest.raises(exc.HypergraphError):
        Hypergraph.from_edges(3, [(1, (0, 1)), (1, (1, 0))])
    with pytest.raises((exc.HypergraphError, ValueError)):
        Hypergraph.from_edges(3, [(0, (0, 1))])
    with pytest.raises((exc.HypergraphError, ValueError)):
        Hypergraph.from_edges(3, [(1, (1,))])
    assert math.isinf(INF)
