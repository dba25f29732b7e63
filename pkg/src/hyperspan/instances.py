"""Instance generators: random hypergraphs, high-girth bases and the
blow-up family on which no proper sub-hypergraph is an f-EFT spanner."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .exceptions import GirthTooSmall, HypergraphError, InfeasibleInstance
from .hypercore import INF, Hypergraph, shortest_distance
from .validation import check_hypergraph, check_positive_int

GIRTH_SIZE_LIMIT = 10**4


def _subset_count(n, r, mixed):
    if mixed:
        return sum(math.comb(n, s) for s in range(2, r + 1))
    return math.comb(n, r)


def random_hypergraph(n, m, r, weight_range=(1, 1), seed=0, mixed=False):
    """``m`` distinct random hyperedges of size ``r`` (or 2..r when ``mixed``)
    with integer weights drawn uniformly from ``weight_range`` (inclusive).

    The result is in canonical edge order, so it survives a save/load cycle
    with unchanged ids.
    """
    check_positive_int("r", r, 2)
    check_positive_int("m", m, 0)
    lo, hi = (int(x) for x in weight_range)
    if lo < 1 or hi < lo:
        raise ValueError(f"weight range {weight_range} must be positive integers lo <= hi")
    total = _subset_count(n, r, mixed)
    if m > total:
        raise InfeasibleInstance(f"only {total} distinct hyperedges exist, asked for {m}")
    rng = np.random.default_rng(seed)
    if m > total // 2:
        sizes = range(2, r + 1) if mixed else (r,)
        pool = [c for s in sizes for c in combinations(range(n), s)]
        picks = rng.choice(len(pool), size=m, replace=False)
        chosen = [pool[j] for j in picks]
    else:
        seen = set()
        chosen = []
        while len(chosen) < m:
            s = int(rng.integers(2, r + 1)) if mixed else r
            c = tuple(sorted(int(x) for x in rng.choice(n, size=s, replace=False)))
            if c not in seen:
                seen.add(c)
                chosen.append(c)
    weights = rng.integers(lo, hi + 1, size=m)
    H = Hypergraph.from_edges(n, [(float(w), c) for w, c in zip(weights, chosen)])
    return H.canonical()


def berge_girth(H):
    """Length of the shortest Berge cycle, or ``inf`` when there is none.

    A Berge cycle of length l is a cycle of length 2l in the bipartite
    vertex/hyperedge incidence graph, so the girth of that graph is halved.
    Two hyperedges sharing two vertices form a cycle of length 2.
    """
    size = sum(len(e) for e in H.edges)
    if size > GIRTH_SIZE_LIMIT:
        raise ValueError(f"incidence size {size} exceeds {GIRTH_SIZE_LIMIT}")
    n = H.n
    adj = [[] for _ in range(n + H.m)]
    for j, e in enumerate(H.edges):
        for v in e.vertices:
            adj[v].append(n + j)
            adj[n + j].append(v)
    best = INF
    for s in range(len(adj)):
        if not adj[s]:
            continue
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return INF if best == INF else best // 2


def _hop_distances(inc, source, limit):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if dist[x] >= limit:
            continue
        for e in inc[x]:
            for y in e:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
    return dist


def high_girth_base(n, r, girth_min, seed=0, budget=1000, max_edges=None):
    """Random r-uniform unit-weight hypergraph with Berge girth >= girth_min.

    Greedy insertion with rejection: a random r-subset is added unless it
    closes a Berge cycle shorter than ``girth_min``, i.e. unless two of its
    vertices are already within ``girth_min - 2`` hops. Stops after
    ``budget`` rejections (or ``max_edges`` insertions).
    """
    check_positive_int("r", r, 2)
    check_positive_int("girth_min", girth_min, 2)
    if r > n:
        return Hypergraph(n, ())
    rng = np.random.default_rng(seed)
    inc = [[] for _ in range(n)]
    edges = []
    rejections = 0
    limit = girth_min - 2
    while rejections < budget and (max_edges is None or len(edges) < max_edges):
        e = tuple(sorted(int(x) for x in rng.choice(n, size=r, replace=False)))
        ok = True
        for a in e[:-1]:
            near = _hop_distances(inc, a, limit)
            if any(b in near for b in e if b > a):
                ok = False
                break
        if not ok:
            rejections += 1
            continue
        edges.append(e)
        for v in e:
            inc[v].append(e)
    return Hypergraph.from_edges(n, [(1.0, e) for e in edges]).canonical()


def integer_root(f, r):
    """Largest t with t**r <= f."""
    t = int(round(f ** (1.0 / r)))
    while t ** r > f:
        t -= 1
    while (t + 1) ** r <= f:
        t += 1
    return t


@dataclass(frozen=True)
class BlowupSpec:
    base: Hypergraph
    t: int
    r: int
    k: int
    f: int

    @classmethod
    def from_base(cls, base, f, k):
        check_hypergraph(base)
        f = check_positive_int("f", f, 1)
        k = check_positive_int("k", k, 1)
        sizes = {len(e) for e in base.edges}
        if len(sizes) > 1:
            raise HypergraphError(f"base must be uniform, found sizes {sorted(sizes)}")
        if any(e.weight != 1.0 for e in base.edges):
            raise HypergraphError("base must be unweighted (all weights 1)")
        r = sizes.pop() if sizes else 2
        girth = berge_girth(base)
        if girth < 2 * k + 2:
            raise GirthTooSmall(f"base girth {girth} < 2k+2 = {2 * k + 2}")
        return cls(base=base, t=integer_root(f, r), r=r, k=k, f=f)


def lowerbound_family(base, f, k):
    """Blow up ``base``: t = floor(f^(1/r)) copies per vertex, every hyperedge
    replaced by all t^r copy combinations.

    Returns ``(H, adversary)`` where ``adversary[h]`` is the fault set made of
    the other t^r - 1 copies of h's base hyperedge. Vertex (u, i) has id
    u*t + i; hyperedges are in canonical order.
    """
    spec = BlowupSpec.from_base(base, f, k)
    t, r = spec.t, spec.r
    groups = []
    for e in base.edges:
        groups.append([
            tuple(sorted(u * t + i for u, i in zip(e.vertices, idx)))
            for idx in product(range(t), repeat=r)
        ])
    flat = sorted(c for g in groups for c in g)
    H = Hypergraph.from_edges(base.n * t, [(1.0, c) for c in flat])
    ids = {c: j for j, c in enumerate(flat)}
    adversary = {}
    for g in groups:
        gid = [ids[c] for c in g]
        for h in gid:
            adversary[h] = tuple(sorted(x for x in gid if x != h))
    assert all(len(F) <= f for F in adversary.values()), "adversary exceeds fault budget"
    return H, adversary


def hardness_certificates(H, adversary, k):
    """For every hyperedge h and pair (x, y) in h, the distances
    (d in H \\ F(h), d in (H \\ h) \\ F(h)). Returns ``(rows, failures)``;
    a failure is a row whose second distance is below 2k+1 or first is not 1.
    """
    rows = []
    failures = []
    for e in H.edges:
        F = frozenset(adversary[e.id])
        for x, y in combinations(e.vertices, 2):
            with_h = shortest_distance(H, F, x, y)
            without = shortest_distance(H, F | {e.id}, x, y)
            row = (e.id, (x, y), with_h, without)
            rows.append(row)
            if with_h != e.weight or without < 2 * k + 1:
                failures.append(row)
    return rows, failures


def dumps_adversary(adversary):
    return "".join(
        f"{h}: {' '.join(map(str, F))}\n".replace(": \n", ":\n")
        for h, F in sorted(adversary.items())
    )


def loads_adversary(text):
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        h, _, rest = line.partition(":")
        out[int(h)] = tuple(int(x) for x in rest.split())
    return out


def loose_cycle(length, r, n=None):
    """Berge cycle of the given length as an r-uniform unit-weight hypergraph.

    Consecutive hyperedges share one vertex and each carries r - 2 private
    vertices, so the Berge girth equals ``length``. Uses length*(r-1)
    vertices; pass a larger ``n`` to pad with isolated vertices.
    """
    check_positive_int("length", length, 3)
    check_positive_int("r", r, 2)
    need = length * (r - 1)
    n = need if n is None else n
    if n < need:
        raise InfeasibleInstance(f"a loose {length}-cycle of rank {r} needs {need} vertices")
    edges = []
    for i in range(length):
        a, b = i, (i + 1) % length
        private = [length + i * (r - 2) + j for j in range(r - 2)]
        edges.append((1.0, (a, b, *private)))
    return Hypergraph.from_edges(n, edges).canonical()
