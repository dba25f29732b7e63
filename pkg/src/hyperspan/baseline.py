"""Baseline constructions: greedy and +2 graph spanners lifted through the
associated graph, and the peel-off f-EFT hyperspanner."""
from __future__ import annotations

import math
from collections import deque

from .assoc import associated, graph_distances, lift
from .base import SpannerEstimator
from .exceptions import NonUniformWeights
from .validation import check_hypergraph, check_positive_int, check_unit_weights


def greedy_spanner(G, k):
    """Greedy (2k-1)-spanner: scan edges by weight, keep an edge only when
    the spanner built so far cannot connect its endpoints within
    (2k-1) times its weight.

    Ties are broken by (u, v) then source id. Distance queries stop at the
    stretch budget, which does not change the output.
    """
    k = check_positive_int("k", k, 1)
    stretch = 2 * k - 1
    adj = [[] for _ in range(G.n)]
    kept = []
    for e in sorted(G.edges, key=lambda e: (e.weight, e.u, e.v, e.src)):
        if e.u == e.v:
            continue
        budget = stretch * e.weight
        d = graph_distances(G.n, adj, e.u, cutoff=budget, target=e.v)[e.v]
        if d > budget:
            kept.append(e)
            adj[e.u].append((e.v, e.weight))
            adj[e.v].append((e.u, e.weight))
    return kept


def additive2_spanner(G):
    """+2 additive spanner of a unit-weight graph.

    Edges at vertices of degree below ceil(sqrt(n)) are kept. The remaining
    heavy vertices are dominated by a greedily chosen center set, and a BFS
    tree from every center is added.
    """
    if len({e.weight for e in G.edges}) > 1:
        raise NonUniformWeights("additive2_spanner needs unit weights")
    n = G.n
    if n == 0:
        return []
    nbrs = [dict() for _ in range(n)]
    for e in G.edges:
        if e.u == e.v:
            continue
        # parallel edges: keep the smallest source id
        for a, b in ((e.u, e.v), (e.v, e.u)):
            cur = nbrs[a].get(b)
            if cur is None or e.src < cur.src:
                nbrs[a][b] = e
    threshold = math.ceil(math.sqrt(n))
    kept = set()
    heavy = set()
    for v in range(n):
        if len(nbrs[v]) < threshold:
            kept.update(nbrs[v].values())
        else:
            heavy.add(v)

    centers = []
    uncovered = set(heavy)
    neighbour_sets = [set(d) for d in nbrs]
    while uncovered:
        best = max(range(n), key=lambda c: (len(neighbour_sets[c] & uncovered), -c))
        centers.append(best)
        uncovered -= neighbour_sets[best]

    for c in centers:
        seen = {c}
        queue = deque([c])
        while queue:
            x = queue.popleft()
            for y in sorted(nbrs[x]):
                if y not in seen:
                    seen.add(y)
                    kept.add(nbrs[x][y])
                    queue.append(y)
    return [e for e in G.edges if e in kept]


def peeloff_eft(H, k, f):
    """f-EFT (2k-1)-hyperspanner by f+1 rounds of edge-disjoint extraction.

    Returns ``(spanner, rounds)`` where ``rounds`` lists the hyperedge ids
    taken in each round. Stops early once every hyperedge has been taken.
    """
    k = check_positive_int("k", k, 1)
    f = check_positive_int("f", f, 0)
    taken = set()
    rounds = []
    for _ in range(f + 1):
        rest = H.without(taken)
        if rest.m == 0:
            break
        G = associated(rest, simple=True)
        ids = frozenset(e.src for e in greedy_spanner(G, k))
        rounds.append(ids)
        taken |= ids
    return H.restrict(taken), rounds


class AssociatedGreedySpanner(SpannerEstimator):
    """Fault-free (2k-1)-hyperspanner from the greedy spanner of the
    associated graph.

    Parameters
    ----------
    k : int, default=2
        Stretch parameter; the output has stretch 2k-1.
    simple : bool, default=True
        Run on the simple associated graph instead of the multigraph.
    """

    def __init__(self, k=2, simple=True):
        self.k = k
        self.simple = simple

    def fit(self, H, y=None):
        H = check_hypergraph(H)
        G = associated(H, simple=self.simple)
        self.graph_edges_ = greedy_spanner(G, self.k)
        return self._set_result(H, lift(G, self.graph_edges_, H))


class AssociatedAdditiveSpanner(SpannerEstimator):
    """Fault-free +2 hyperspanner of a unit-weight hypergraph.

    ``size_constant_`` is the realised c in |S| <= c * n^{3/2}, counted in
    graph edges before lifting.
    """

    def __init__(self, simple=True):
        self.simple = simple

    def fit(self, H, y=None):
        H = check_unit_weights(check_hypergraph(H))
        G = associated(H, simple=self.simple)
        self.graph_edges_ = additive2_spanner(G)
        self.size_constant_ = len(self.graph_edges_) / max(1.0, H.n ** 1.5)
        return self._set_result(H, lift(G, self.graph_edges_, H))


class PeelOffSpanner(SpannerEstimator):
    """Peel-off f-EFT (2k-1)-hyperspanner (size linear in f)."""

    def __init__(self, k=2, f=1):
        self.k = k
        self.f = f

    def fit(self, H, y=None):
        H = check_hypergraph(H)
        spanner, self.rounds_ = peeloff_eft(H, self.k, self.f)
        return self._set_result(H, spanner)
