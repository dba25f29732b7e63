"""Brute-force reference implementations on raw edge lists.

Nothing here imports the package under test. An instance is ``(n, edges)``
with ``edges`` a list of ``(weight, vertex_tuple)`` and ids equal to list
positions.
"""
import math
from itertools import combinations

INF = math.inf


def floyd_warshall(n, edges, removed=()):
    """All-pairs distances of the clique expansion of ``edges`` minus ``removed`` ids."""
    gone = set(removed)
    d = [[0.0 if i == j else INF for j in range(n)] for i in range(n)]
    for idx, (w, verts) in enumerate(edges):
        if idx in gone:
            continue
        for a, b in combinations(verts, 2):
            if w < d[a][b]:
                d[a][b] = d[b][a] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def graph_floyd(n, graph_edges):
    """All-pairs distances of a graph given as ``(u, v, w)`` triples."""
    return floyd_warshall(n, [(w, (u, v)) for u, v, w in graph_edges])


def berge_girth(n, edges):
    """Shortest Berge cycle by exhaustive search over vertex/edge sequences."""
    best = INF
    sets = [frozenset(v) for _, v in edges]
    m = len(sets)

    def extend(start, cur, used_v, used_e, length):
        nonlocal best
        if length >= best:
            return
        for j in range(m):
            if j in used_e or cur not in sets[j]:
                continue
            if length >= 1 and start in sets[j] and length + 1 < best:
                best = length + 1
            for nxt in sets[j]:
                if nxt != cur and nxt not in used_v and nxt > start:
                    extend(start, nxt, used_v | {nxt}, used_e | {j}, length + 1)

    for s in range(n):
        extend(s, s, {s}, frozenset(), 0)
    return best


def naive_greedy(n, graph_edges, k):
    """Greedy (2k-1)-spanner recomputing all distances after every edge.

    ``graph_edges`` are ``(u, v, w, src)``; scan order (w, u, v, src).
    """
    kept = []
    for u, v, w, src in sorted(graph_edges, key=lambda e: (e[2], e[0], e[1], e[3])):
        d = graph_floyd(n, [(a, b, c) for a, b, c, _ in kept])
        if d[u][v] > (2 * k - 1) * w:
            kept.append((u, v, w, src))
    return kept


def clique_expansion(edges):
    return [(a, b, w, idx) for idx, (w, verts) in enumerate(edges) for a, b in combinations(verts, 2)]


def simple_expansion(edges):
    best = {}
    for a, b, w, src in clique_expansion(edges):
        if (a, b) not in best or (w, src) < best[(a, b)][2:]:
            best[(a, b)] = (a, b, w, src)
    return [best[key] for key in sorted(best)]


def eft_violations(n, edges, kept_ids, f, bound):
    """Count (F, pair) violations of ``d_S <= bound(d_H)`` over all |F| <= f.

    ``bound`` maps a finite host distance to the allowed spanner distance.
    """
    kept = set(kept_ids)
    count = 0
    for size in range(f + 1):
        for F in combinations(range(len(edges)), size):
            dH = floyd_warshall(n, edges, F)
            dS = floyd_warshall(n, [e if i in kept else (e[0], ()) for i, e in enumerate(edges)], F)
            for u in range(n):
                for v in range(u + 1, n):
                    if dH[u][v] == INF:
                        if dS[u][v] != INF:
                            count += 1
                    elif dS[u][v] > bound(dH[u][v]) + 1e-9:
                        count += 1
    return count


def blowup(base_edges, t):
    """Blow-up edge groups: vertex (u, i) -> u*t + i, all t^r copy choices."""
    groups = []
    for _, verts in base_edges:
        combos = [()]
        for _ in verts:
            combos = [c + (i,) for c in combos for i in range(t)]
        groups.append([tuple(sorted(u * t + i for u, i in zip(verts, c))) for c in combos])
    return groups
