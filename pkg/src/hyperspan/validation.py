"""Input validation helpers shared by the estimators."""
from .exceptions import NonUniformWeights
from .hypercore import Hypergraph


def check_hypergraph(H, min_rank=None):
    if not isinstance(H, Hypergraph):
        raise TypeError(f"expected a Hypergraph, got {type(H).__name__}")
    if min_rank is not None and H.m and H.rank < min_rank:
        raise ValueError(f"rank {H.rank} below required {min_rank}")
    return H


def check_fault_set(H, faults, f=None):
    fs = frozenset(int(x) for x in faults)
    if len(fs) != len(list(faults)):
        raise ValueError("fault set contains duplicates")
    missing = [x for x in fs if not H.has_edge(x)]
    if missing:
        raise ValueError(f"fault ids not in hypergraph: {sorted(missing)}")
    if f is not None and len(fs) > f:
        raise ValueError(f"fault set of size {len(fs)} exceeds budget {f}")
    return fs


def check_unit_weights(H):
    ws = {e.weight for e in H.edges}
    if len(ws) > 1:
        raise NonUniformWeights(f"expected uniform weights, found {sorted(ws)[:4]}")
    return H


def check_positive_int(name, value, minimum):
    if isinstance(value, bool) or int(value) != value:
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_is_spanner_of(S, H):
    if not S.is_subgraph_of(H):
        raise ValueError("spanner is not a sub-hypergraph of the host")
    return S
