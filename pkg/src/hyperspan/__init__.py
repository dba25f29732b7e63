"""Fault-tolerant hypergraph spanners: constructions, baselines, instance
generators and verification oracles."""
from .additive_eft import AdditiveEFTSpanner, build_additive_eft, surplus_bound
from .assoc import associated, expand_multigraph, lift, simplify
from .baseline import (
    AssociatedAdditiveSpanner,
    AssociatedGreedySpanner,
    PeelOffSpanner,
    additive2_spanner,
    greedy_spanner,
    peeloff_eft,
)
from .eftcluster import ClusterSpanner, Params, build
from .exceptions import (
    ExhaustiveTooLarge,
    GirthTooSmall,
    HypergraphError,
    InfeasibleInstance,
    InvariantViolation,
    NonUniformWeights,
    ParseError,
)
from .hypercore import (
    INF,
    Hyperedge,
    HyperPath,
    Hypergraph,
    all_pairs_distances,
    dumps,
    load,
    loads,
    save,
    shortest_distance,
    shortest_path,
)
from .instances import berge_girth, high_girth_base, lowerbound_family, random_hypergraph
from .verify import certify_cluster, replay_invariants, verify_add, verify_mult

__version__ = "0.1.0"
