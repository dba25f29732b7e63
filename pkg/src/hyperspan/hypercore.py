"""Hypergraph data model, fault-aware shortest paths and the ``.hg`` format.

A hyperpath is a sequence of hyperedges in which consecutive hyperedges share
a vertex. Traversing a hyperedge between any two of its members costs its
weight once, so distances coincide with those of the clique expansion.
"""
from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .exceptions import (
    DuplicateEdge,
    EdgeTooSmall,
    HypergraphError,
    MalformedLine,
    NonPositiveWeight,
    RankExceeded,
    VertexOutOfRange,
)

INF = math.inf


@dataclass(frozen=True)
class Hyperedge:
    id: int
    vertices: tuple
    weight: float

    def __post_init__(self):
        verts = tuple(sorted(int(x) for x in self.vertices))
        if len(set(verts)) != len(verts):
            raise HypergraphError(f"hyperedge {self.id} repeats a vertex: {verts}")
        if len(verts) < 2:
            raise HypergraphError(f"hyperedge {self.id} has fewer than 2 vertices")
        w = float(self.weight)
        if not (w > 0 and math.isfinite(w)):
            raise HypergraphError(f"hyperedge {self.id} has weight {self.weight!r}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "weight", w)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    @property
    def key(self):
        """Canonical sort key: (weight, vertex tuple)."""
        return (self.weight, self.vertices)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable weighted hypergraph on vertices ``0..n-1``.

    Hyperedge ids are stable: a sub-hypergraph keeps the ids of its host, so
    fault sets can be applied to a graph and its spanner alike.
    """

    n: int
    edges: tuple = ()
    allow_multi: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 0:
            raise HypergraphError("negative vertex count")
        seen_ids = set()
        seen_keys = set()
        for e in self.edges:
            if not isinstance(e, Hyperedge):
                raise TypeError(f"expected Hyperedge, got {type(e).__name__}")
            if e.id in seen_ids:
                raise HypergraphError(f"duplicate hyperedge id {e.id}")
            seen_ids.add(e.id)
            if e.vertices[-1] >= self.n or e.vertices[0] < 0:
                raise HypergraphError(f"hyperedge {e.id} has a vertex outside 0..{self.n - 1}")
            if not self.allow_multi:
                if e.key in seen_keys:
                    raise HypergraphError(
                        f"hyperedge {e.id} duplicates vertex set and weight of another edge"
                    )
                seen_keys.add(e.key)

    @classmethod
    def from_edges(cls, n, edges, allow_multi=False):
        """Build from ``(weight, vertices)`` pairs; ids are assigned 0..m-1."""
        return cls(
            n,
            tuple(Hyperedge(i, tuple(vs), w) for i, (w, vs) in enumerate(edges)),
            allow_multi=allow_multi,
        )

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def rank(self):
        return max((len(e) for e in self.edges), default=0)

    @cached_property
    def ids(self):
        return tuple(e.id for e in self.edges)

    @cached_property
    def _index(self):
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def incidence(self):
        """Per-vertex list of edge positions (indices into ``edges``)."""
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e.vertices:
                inc[v].append(i)
        return inc

    @cached_property
    def max_weight(self):
        return max((e.weight for e in self.edges), default=0.0)

    def edge(self, edge_id):
        return self.edges[self._index[edge_id]]

    def weight(self, edge_id):
        return self.edges[self._index[edge_id]].weight

    def has_edge(self, edge_id):
        return edge_id in self._index

    def restrict(self, edge_ids):
        """Sub-hypergraph on the same vertex set keeping ``edge_ids``, in host order."""
        keep = set(edge_ids)
        unknown = keep - self._index.keys()
        if unknown:
            raise KeyError(f"unknown hyperedge ids: {sorted(unknown)[:5]}")
        return Hypergraph(
            self.n, tuple(e for e in self.edges if e.id in keep), self.allow_multi
        )

    def without(self, edge_ids):
        drop = set(edge_ids)
        return Hypergraph(
            self.n, tuple(e for e in self.edges if e.id not in drop), self.allow_multi
        )

    def is_subgraph_of(self, other):
        return self.n == other.n and all(
            other.has_edge(e.id) and other.edge(e.id) == e for e in self.edges
        )

    def canonical(self):
        """Edges sorted by (weight, vertices) and renumbered 0..m-1."""
        ordered = sorted(self.edges, key=lambda e: (e.key, e.id))
        return Hypergraph(
            self.n,
            tuple(Hyperedge(i, e.vertices, e.weight) for i, e in enumerate(ordered)),
            self.allow_multi,
        )

    def fault_mask(self, faults):
        """Bytearray over edge positions, 1 where the hyperedge has failed.

        Fault ids absent from this hypergraph are ignored, which is what
        applying a host fault set to a spanner requires.
        """
        mask = bytearray(self.m)
        index = self._index
        for f in faults:
            i = index.get(f)
            if i is not None:
                mask[i] = 1
        return mask


@dataclass(frozen=True)
class HyperPath:
    """Ordered hyperedge sequence from ``start`` to ``end``.

    ``head`` is the vertex set of the path's anchor: by default the first
    hyperedge, or ``{start}`` for an empty path. Paths grown with
    :meth:`extend` keep the head of the path they were grown from.
    """

    edges: tuple
    start: int
    end: int
    head: frozenset = field(default=None)

    @classmethod
    def trivial(cls, v):
        return cls((), v, v, frozenset((v,)))

    @classmethod
    def from_edges(cls, H, edges, start, end):
        edges = tuple(edges)
        head = frozenset(H.edge(edges[0]).vertices) if edges else frozenset((start,))
        return cls(edges, start, end, head)

    def __post_init__(self):
        if self.head is None:
            if self.edges:
                raise ValueError("head must be given for a non-empty path")
            object.__setattr__(self, "head", frozenset((self.start,)))

    def extend(self, edge_id, end):
        """``h o P``: append hyperedge ``edge_id`` leading to ``end``."""
        return HyperPath(self.edges + (edge_id,), self.start, end, self.head)

    @property
    def hops(self):
        return len(self.edges)

    @property
    def last_edge(self):
        return self.edges[-1] if self.edges else None

    def weight(self, H):
        return sum(H.weight(e) for e in self.edges)

    def is_valid(self, H):
        if not self.edges:
            return self.start == self.end
        sets = [set(H.edge(e).vertices) for e in self.edges]
        if self.start not in sets[0] or self.end not in sets[-1]:
            return False
        return all(a & b for a, b in zip(sets, sets[1:]))


def _dijkstra(H, source, mask=None, target=None, cutoff=None, parents=False):
    n = H.n
    dist = [INF] * n
    parent = [None] * n if parents else None
    dist[source] = 0.0
    edges = H.edges
    inc = H.incidence
    expanded = bytearray(H.m)
    if mask is not None:
        expanded[:] = mask
    heap = [(0.0, source)]
    done = bytearray(n)
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        if x == target:
            break
        for i in inc[x]:
            if expanded[i]:
                continue
            expanded[i] = 1
            e = edges[i]
            nd = d + e.weight
            if cutoff is not None and nd > cutoff:
                continue
            for y in e.vertices:
                if nd < dist[y]:
                    dist[y] = nd
                    if parents:
                        parent[y] = (e.id, x)
                    heapq.heappush(heap, (nd, y))
    return dist, parent


def _check_vertex(H, v):
    if not 0 <= v < H.n:
        raise IndexError(f"vertex {v} outside 0..{H.n - 1}")


def distances_from(H, source, faults=(), cutoff=None):
    """Single-source distances in ``H`` minus ``faults`` (list indexed by vertex)."""
    _check_vertex(H, source)
    return _dijkstra(H, source, H.fault_mask(faults), cutoff=cutoff)[0]


def all_pairs_distances(H, faults=()):
    mask = H.fault_mask(faults)
    return [_dijkstra(H, s, mask)[0] for s in range(H.n)]


def shortest_distance(H, faults, u, v):
    _check_vertex(H, u)
    _check_vertex(H, v)
    if u == v:
        return 0.0
    return _dijkstra(H, u, H.fault_mask(faults), target=v)[0][v]


def shortest_path(H, faults, u, v):
    """A minimum-weight fault-avoiding hyperpath from ``u`` to ``v``, or None."""
    _check_vertex(H, u)
    _check_vertex(H, v)
    if u == v:
        return HyperPath.trivial(u)
    dist, parent = _dijkstra(H, u, H.fault_mask(faults), target=v, parents=True)
    if dist[v] == INF:
        return None
    seq = []
    x = v
    while x != u:
        eid, x = parent[x]
        seq.append(eid)
    seq.reverse()
    return HyperPath.from_edges(H, seq, u, v)


# --- text format -----------------------------------------------------------


def _format_weight(w):
    if float(w).is_integer() and abs(w) < 2**53:
        return str(int(w))
    return repr(float(w))


def dumps(H):
    """Canonical ``.hg`` text: edges sorted by (weight, vertex tuple)."""
    lines = [f"{H.n} {H.m} {H.rank}"]
    for e in sorted(H.edges, key=lambda e: (e.key, e.id)):
        lines.append(" ".join([_format_weight(e.weight), *map(str, e.vertices)]))
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, s


def loads(text, allow_multi=False):
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedLine(1, "missing header 'n m r'")
    lineno, header = lines[0]
    try:
        n, m, r = (int(t) for t in header.split())
    except ValueError:
        raise MalformedLine(lineno, f"expected header 'n m r', got {header!r}") from None
    if n < 0 or m < 0 or r < 0:
        raise MalformedLine(lineno, "negative header field")
    body = lines[1:]
    if len(body) != m:
        at = body[m][0] if len(body) > m else (lines[-1][0] + 1)
        raise MalformedLine(at, f"header declares {m} hyperedges, file has {len(body)}")
    edges = []
    seen = set()
    for idx, (lineno, s) in enumerate(body):
        toks = s.split()
        try:
            w = float(toks[0])
            verts = [int(t) for t in toks[1:]]
        except (ValueError, IndexError):
            raise MalformedLine(lineno, f"cannot parse {s!r}") from None
        if not math.isfinite(w):
            raise MalformedLine(lineno, f"weight {toks[0]!r} is not finite")
        if w <= 0:
            raise NonPositiveWeight(lineno, f"weight {toks[0]} must be positive")
        if len(verts) < 2:
            raise EdgeTooSmall(lineno, "a hyperedge needs at least 2 vertices")
        if len(set(verts)) != len(verts):
            raise MalformedLine(lineno, "repeated vertex in hyperedge")
        if len(verts) > r:
            raise RankExceeded(lineno, f"hyperedge of size {len(verts)} exceeds rank {r}")
        bad = [v for v in verts if not 0 <= v < n]
        if bad:
            raise VertexOutOfRange(lineno, f"vertex {bad[0]} outside 0..{n - 1}")
        e = Hyperedge(idx, tuple(verts), w)
        if not allow_multi and e.key in seen:
            raise DuplicateEdge(lineno, "duplicate hyperedge (same vertices and weight)")
        seen.add(e.key)
        edges.append(e)
    return Hypergraph(n, tuple(edges), allow_multi)


def load(path, allow_multi=False):
    with open(path) as fh:
        return loads(fh.read(), allow_multi=allow_multi)


def save(H, path):
    with open(path, "w") as fh:
        fh.write(dumps(H))


def loads_faults(text, H=None):
    """Parse a fault-set line (0-based hyperedge indices)."""
    lines = list(_content_lines(text))
    if len(lines) > 1:
        raise MalformedLine(lines[1][0], "fault file must hold a single line")
    if not lines:
        return frozenset()
    lineno, s = lines[0]
    try:
        ids = [int(t) for t in s.split()]
    except ValueError:
        raise MalformedLine(lineno, f"cannot parse {s!r}") from None
    if len(set(ids)) != len(ids):
        raise MalformedLine(lineno, "duplicate fault id")
    if H is not None:
        bad = [i for i in ids if not H.has_edge(i)]
        if bad:
            raise MalformedLine(lineno, f"unknown hyperedge id {bad[0]}")
    return frozenset(ids)


def dumps_faults(faults):
    return " ".join(str(i) for i in sorted(faults)) + "\n"


def match_subgraph(H, S):
    """Re-key ``S``'s hyperedges to the ids of equal hyperedges in ``H``.

    Needed when a spanner was read back from a file, where ids are file
    positions rather than host ids.
    """
    if S.n != H.n:
        raise HypergraphError(f"vertex counts differ: {S.n} vs {H.n}")
    pool = {}
    for e in H.edges:
        pool.setdefault(e.key, []).append(e.id)
    out = []
    for e in S.edges:
        ids = pool.get(e.key)
        if not ids:
            raise HypergraphError(
                f"spanner hyperedge {e.vertices} (w={e.weight}) is not in the host"
            )
        out.append(ids.pop(0))
    return H.restrict(out)
