"""Clique expansion of hypergraphs and lifting of graph spanners.

Every graph edge remembers the hyperedge it came from, so any spanner of the
associated graph maps back to a sub-hypergraph with the same stretch.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .hypercore import INF


class GraphEdge(NamedTuple):
    u: int
    v: int
    weight: float
    src: int


@dataclass(frozen=True)
class AssociatedGraph:
    n: int
    edges: tuple
    simple: bool = False

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self, edges=None):
        adj = [[] for _ in range(self.n)]
        for e in self.edges if edges is None else edges:
            adj[e.u].append((e.v, e.weight))
            adj[e.v].append((e.u, e.weight))
        return adj

    def distances(self, source, edges=None):
        return graph_distances(self.n, self.adjacency(edges), source)

    def all_pairs(self, edges=None):
        adj = self.adjacency(edges)
        return [graph_distances(self.n, adj, s) for s in range(self.n)]


def graph_distances(n, adj, source, cutoff=None, target=None):
    dist = [INF] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        if x == target:
            break
        for y, w in adj[x]:
            nd = d + w
            if cutoff is not None and nd > cutoff:
                continue
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def expand_multigraph(H):
    """Replace each hyperedge by a clique of C(|h|, 2) edges of its weight."""
    edges = tuple(
        GraphEdge(u, v, e.weight, e.id)
        for e in H.edges
        for u, v in combinations(e.vertices, 2)
    )
    return AssociatedGraph(H.n, edges, simple=False)


def simplify(G):
    """Keep only the lightest edge per vertex pair (ties: smallest source id)."""
    best = {}
    for e in G.edges:
        key = (e.u, e.v)
        cur = best.get(key)
        if cur is None or (e.weight, e.src) < (cur.weight, cur.src):
            best[key] = e
    return AssociatedGraph(G.n, tuple(best[k] for k in sorted(best)), simple=True)


def lift(G, spanner_edges, H):
    """Sub-hypergraph of ``H`` made of the source hyperedges of ``spanner_edges``."""
    return H.restrict({e.src for e in spanner_edges})


def associated(H, simple=True):
    G = expand_multigraph(H)
    return simplify(G) if simple else G


def dumps_edgelist(G, edges=None):
    rows = G.edges if edges is None else edges
    return "".join(f"{e.u} {e.v} {_fmt(e.weight)} {e.src}\n" for e in rows)


def _fmt(w):
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def write_edgelist(G, path, edges=None):
    with open(path, "w") as fh:
        fh.write(dumps_edgelist(G, edges))
