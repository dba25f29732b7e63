"""Brute-force certification of EFT stretch and surplus guarantees.

Every check recomputes all-pairs distances in ``H \\ F`` and ``S \\ F`` with
plain Dijkstra, for each candidate fault set F. Nothing is incremental: the
oracle should be easy to trust rather than fast.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .eftcluster import build, count_disjoint_pairs, overlapping_paths, reseeded
from .exceptions import ExhaustiveTooLarge, InvariantViolation
from .hypercore import INF, all_pairs_distances, shortest_distance, shortest_path
from .validation import check_is_spanner_of

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 10**5
MODES = ("exhaustive", "sampled", "adversarial")


@dataclass(frozen=True)
class FaultVerdict:
    fault_set: frozenset
    pair: tuple
    d_H: float
    d_S: float
    bound: float
    ok: bool

    @property
    def ratio(self):
        if self.d_H == 0:
            return 1.0
        return self.d_S / self.d_H

    @property
    def surplus(self):
        if self.d_S == INF:
            return 0.0 if self.d_H == INF else INF
        return self.d_S - self.d_H

    @property
    def excess(self):
        """How far past the bound (negative when satisfied)."""
        if self.d_S == INF:
            return -INF if self.bound == INF else INF
        return self.d_S - self.bound


@dataclass
class VerifyReport:
    kind: str
    mode: str
    passed: bool = True
    fault_sets_checked: int = 0
    pairs_checked: int = 0
    violations: int = 0
    worst: FaultVerdict = None
    worst_ratio: float = 1.0
    max_surplus: float = 0.0

    TSV_HEADER = "mode\tfault_sets_checked\tpairs_checked\tviolations\tworst_ratio\tworst_pair\tworst_faults"

    def to_tsv(self):
        pair = "-" if self.worst is None else f"{self.worst.pair[0]},{self.worst.pair[1]}"
        faults = "-" if self.worst is None else (
            ",".join(map(str, sorted(self.worst.fault_set))) or "{}"
        )
        return (f"{self.TSV_HEADER}\n{self.mode}\t{self.fault_sets_checked}\t"
                f"{self.pairs_checked}\t{self.violations}\t{_fmt(self.worst_ratio)}\t"
                f"{pair}\t{faults}\n")


def _fmt(x):
    if x == INF:
        return "inf"
    return f"{x:.6g}"


def exhaustive_count(m, f):
    return sum(math.comb(m, j) for j in range(min(f, m) + 1))


def _within(d_S, bound):
    if d_S == INF:
        return bound == INF
    return d_S <= bound + 1e-9 * abs(bound)


def multiplicative_bound(stretch):
    def bound(u, v, faults, d_H, H):
        return stretch * d_H if d_H != INF else INF
    return bound


def additive_bound(surplus):
    """``surplus`` is a number or ``callable(u, v, faults, w_st)``.

    ``w_st`` is the largest hyperedge weight on a shortest u-v path of
    ``H \\ F``.
    """
    uniform = {}

    def bound(u, v, faults, d_H, H):
        if d_H == INF:
            return INF
        if not callable(surplus):
            return d_H + surplus
        if "w" not in uniform:
            ws = {e.weight for e in H.edges}
            uniform["w"] = ws.pop() if len(ws) == 1 else None
        w_st = uniform["w"]
        if w_st is None:
            P = shortest_path(H, faults, u, v)
            w_st = max((H.weight(e) for e in P.edges), default=0.0)
        return d_H + surplus(u, v, faults, w_st)
    return bound


def fault_verdict(H, S, faults, u, v, bound_fn):
    d_H = shortest_distance(H, faults, u, v)
    d_S = shortest_distance(S, faults, u, v)
    b = bound_fn(min(u, v), max(u, v), faults, d_H, H)
    return FaultVerdict(frozenset(faults), (u, v), d_H, d_S, b, _within(d_S, b))


class _Checker:
    def __init__(self, H, S, bound_fn, kind):
        self.H = H
        self.S = S
        self.bound_fn = bound_fn
        self.kind = kind
        self.s_ids = frozenset(S.ids)
        self._s_cache = {}

    def _spanner_distances(self, faults):
        key = frozenset(faults) & self.s_ids
        d = self._s_cache.get(key)
        if d is None:
            d = all_pairs_distances(self.S, key)
            self._s_cache[key] = d
        return d

    def check(self, faults):
        faults = frozenset(faults)
        dH = all_pairs_distances(self.H, faults)
        dS = self._spanner_distances(faults)
        n = self.H.n
        violations = 0
        worst = None
        max_surplus = 0.0
        worst_ratio = 1.0
        for u in range(n):
            for v in range(u + 1, n):
                dh = dH[u][v]
                ds = dS[u][v]
                b = self.bound_fn(u, v, faults, dh, self.H)
                ok = _within(ds, b)
                verdict = None
                if dh != INF:
                    if ds == INF:
                        ratio = surplus = INF
                    else:
                        ratio = ds / dh if dh > 0 else 1.0
                        surplus = ds - dh
                    max_surplus = max(max_surplus, surplus)
                    worst_ratio = max(worst_ratio, ratio)
                if not ok:
                    violations += 1
                    verdict = FaultVerdict(faults, (u, v), dh, ds, b, False)
                    if worst is None or _severity(verdict) > _severity(worst):
                        worst = verdict
        return violations, n * (n - 1) // 2, worst, worst_ratio, max_surplus


def _severity(verdict):
    return verdict.excess


def _merge(report, result):
    violations, pairs, worst, ratio, surplus = result
    report.fault_sets_checked += 1
    report.pairs_checked += pairs
    report.violations += violations
    report.worst_ratio = max(report.worst_ratio, ratio)
    report.max_surplus = max(report.max_surplus, surplus)
    if worst is not None and (report.worst is None or _severity(worst) > _severity(report.worst)):
        report.worst = worst


def _sampled_sets(H, f, budget, rng):
    ids = list(H.ids)
    out = [frozenset()]
    top = min(f, len(ids))
    for _ in range(budget):
        if top == 0:
            break
        size = int(rng.integers(1, top + 1))
        picks = rng.choice(len(ids), size=size, replace=False)
        out.append(frozenset(ids[j] for j in picks))
    return out


def _greedy_cut(S, f, x, y):
    """Fault prefixes that each cut the current shortest x-y path of S at
    the hyperedge whose loss lengthens it most."""
    faults = frozenset()
    prefixes = []
    for _ in range(f):
        P = shortest_path(S, faults, x, y)
        if P is None or not P.edges:
            break
        best = max(
            P.edges,
            key=lambda e: (shortest_distance(S, faults | {e}, x, y), -e),
        )
        faults = faults | {best}
        prefixes.append(faults)
    return prefixes


def _adversarial_sets(H, S, f, budget, rng):
    sets = list(_sampled_sets(H, f, budget, rng))
    s_ids = frozenset(S.ids)
    pairs = set()
    for e in H.edges:
        if e.id in s_ids:
            continue
        for x, y in combinations(e.vertices, 2):
            pairs.add((x, y))
            parallel = sorted(
                (g for g in S.edges if x in g and y in g), key=lambda g: (g.weight, g.id)
            )
            if parallel:
                sets.append(frozenset(g.id for g in parallel[:f]))
    all_pairs = list(combinations(range(H.n), 2))
    if len(all_pairs) > budget:
        picks = rng.choice(len(all_pairs), size=budget, replace=False)
        all_pairs = [all_pairs[j] for j in sorted(picks)]
    pairs.update(all_pairs)
    for x, y in sorted(pairs):
        sets.extend(_greedy_cut(S, f, x, y))
    seen = set()
    out = []
    for F in sets:
        if F not in seen:
            seen.add(F)
            out.append(F)
    return out


def _fault_sets(H, S, f, mode, seed, sample_budget):
    if mode == "exhaustive":
        count = exhaustive_count(H.m, f)
        if count > EXHAUSTIVE_LIMIT:
            raise ExhaustiveTooLarge(count, EXHAUSTIVE_LIMIT)
        ids = H.ids
        return (frozenset(c) for j in range(min(f, H.m) + 1) for c in combinations(ids, j))
    rng = np.random.default_rng(seed)
    if mode == "sampled":
        return _sampled_sets(H, f, sample_budget, rng)
    if mode == "adversarial":
        return _adversarial_sets(H, S, f, sample_budget, rng)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _run(H, S, f, bound_fn, kind, mode, seed, sample_budget, threads):
    check_is_spanner_of(S, H)
    report = VerifyReport(kind=kind, mode=mode)
    checker = _Checker(H, S, bound_fn, kind)
    sets = _fault_sets(H, S, f, mode, seed, sample_budget)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for result in pool.map(checker.check, sets):
                _merge(report, result)
    else:
        for F in sets:
            _merge(report, checker.check(F))
    report.passed = report.violations == 0
    return report


def verify_mult(H, S, f, stretch, mode="exhaustive", seed=0, sample_budget=1000, threads=1):
    """Check ``d_{S\\F}(u,v) <= stretch * d_{H\\F}(u,v)`` over fault sets of size <= f.

    Exhaustive mode refuses (``ExhaustiveTooLarge``) above 10^5 fault sets.
    """
    return _run(H, S, f, multiplicative_bound(stretch), "mult", mode, seed, sample_budget, threads)


def verify_add(H, S, f, surplus, mode="exhaustive", seed=0, sample_budget=1000, threads=1):
    """Check ``d_{S\\F}(u,v) <= d_{H\\F}(u,v) + surplus`` over fault sets of size <= f.

    ``surplus`` is a constant or ``callable(u, v, faults, w_st)``; see
    :func:`additive_bound`.
    """
    return _run(H, S, f, additive_bound(surplus), "add", mode, seed, sample_budget, threads)


@dataclass
class CertifiedBuild:
    spanner: object
    stats: object
    first_report: VerifyReport
    report: VerifyReport
    retried: bool

    @property
    def first_passed(self):
        return self.first_report.passed

    @property
    def passed(self):
        return self.report.passed


def certify_cluster(H, params, mode="exhaustive", seed=0, sample_budget=1000, trace=False):
    """Build with the clustering algorithm and verify stretch 2k-1.

    The guarantee holds with high probability only, so one failed
    verification triggers a single rebuild with a fresh seed and a doubled
    path sample before failure is reported.
    """
    stretch = 2 * params.k - 1
    S, stats = build(H, params, trace=trace)
    first = verify_mult(H, S, params.f, stretch, mode, seed, sample_budget)
    if first.passed:
        return CertifiedBuild(S, stats, first, first, False)
    logger.info("stretch check failed (seed %d); rebuilding once", params.seed)
    S2, stats2 = build(H, reseeded(params), trace=trace)
    second = verify_mult(H, S2, params.f, stretch, mode, seed, sample_budget)
    return CertifiedBuild(S2, stats2, first, second, True)


# --- invariant replay ---------------------------------------------------------


@dataclass
class ReplayReport:
    passed: bool = True
    checks: int = 0
    sd_events: int = 0
    certified: int = 0
    anomalies: Counter = field(default_factory=Counter)

    @property
    def overlap_anomaly_rate(self):
        return self.anomalies["HalfOverlap"] / self.sd_events if self.sd_events else 0.0


def _key(trace, e):
    return (trace.weights[e], e)


def _valid_walk(trace, P):
    if not P.edges:
        return P.start == P.end
    sets = [set(trace.vertices[e]) for e in P.edges]
    if P.start not in sets[0] or P.end not in sets[-1]:
        return False
    return all(a & b for a, b in zip(sets, sets[1:]))


def _families(it):
    for v, paths in it.P.items():
        yield "P", v, paths
    for v, paths in it.Q.items():
        yield "Q", v, paths


def replay_invariants(stats, trace=None):
    """Re-check the clustering invariants recorded in a build trace.

    Raises :class:`InvariantViolation` on the first broken invariant.
    Discard events that lack the half-overlap the sampling argument
    promises are counted as ``HalfOverlap`` anomalies, since the guarantee is
    probabilistic; they are logged, not fatal.
    """
    tr = trace if trace is not None else stats.trace
    if tr is None:
        raise ValueError("build was run without tracing")
    p = tr.params
    k, f = p.k, p.f
    r = max(tr.rank, 2)
    quota = p.quota(r)
    rep = ReplayReport()

    def fail(kind, msg, event=None):
        raise InvariantViolation(kind, msg, event)

    # structure
    for it in tr.iterations:
        for label, v, paths in _families(it):
            for P in paths:
                rep.checks += 1
                if not _valid_walk(tr, P) or P.end != v:
                    fail("PathStructure", f"i={it.i} {label}({v}) holds an invalid path {P}")
                if P.hops > it.i:
                    fail("PathStructure", f"i={it.i} {label}({v}) path has {P.hops} hops")
        for v, paths in it.Q.items():
            rep.checks += 1
            if len(paths) != quota:
                fail("PathStructure", f"|Q_{it.i}({v})| = {len(paths)} != {quota}")
            if not set(paths) <= set(it.P[v]):
                fail("PathStructure", f"Q_{it.i}({v}) not contained in P_{it.i - 1}({v})")
            for P in paths:
                if not (P.head & it.Z):
                    fail("PathStructure", f"Q_{it.i}({v}) path head misses Z_{it.i}")

    # monotone weights toward the owner
    for it in tr.iterations:
        for label, v, paths in _families(it):
            for P in paths:
                rep.checks += 1
                keys = [_key(tr, e) for e in P.edges]
                if any(a >= b for a, b in zip(keys, keys[1:])):
                    fail("MonotoneWeights", f"i={it.i} {label}({v}) weights not increasing: {keys}", P)

    # disjointness
    for it in tr.iterations:
        for label, v, paths in _families(it):
            rep.checks += 1
            edges = [e for P in paths for e in P.edges]
            if len(edges) != len(set(edges)):
                fail("Disjointness", f"i={it.i} {label}({v}) paths share a hyperedge")
            if label == "P" and it.i == 1 and p.first_round == "cover":
                continue
            heads = [x for P in paths for x in P.head]
            if len(heads) != len(set(heads)):
                fail("Disjointness", f"i={it.i} {label}({v}) heads overlap")

    # postponed hyperedges are heavier than everything their endpoints hold
    for it in tr.iterations:
        for h, pairs in it.pp_pairs.items():
            hk = _key(tr, h)
            for pair in pairs:
                for x in pair:
                    rep.checks += 1
                    if x not in it.V:
                        fail("PostponedHeavier", f"i={it.i} pp pair {pair} of {h}: {x} inactive")
                    for P in it.Q[x]:
                        if any(_key(tr, e) >= hk for e in P.edges):
                            fail("PostponedHeavier", f"i={it.i} {h} not heavier than Q_{it.i}({x})")

    # bookkeeping
    for it in tr.iterations:
        rep.checks += 1
        if it.R & it.H:
            fail("RDisjointH", f"R_{it.i} meets H_{it.i}")
        last = {P.last_edge for paths in it.P.values() for P in paths}
        if not (it.H - it.H_prev) <= last:
            fail("AddedEdges", f"i={it.i}: added hyperedge is no path's last edge")
    if tr.iterations and tr.kept != tr.iterations[-1].H:
        fail("KeptSet", "kp hyperedges differ from the output")

    # discard certificates
    for ev in tr.sd_events:
        rep.sd_events += 1
        hk = _key(tr, ev.h)
        if ev.i == 1 and p.first_round == "cover":
            covering = sum(
                1 for P in ev.snapshot
                if P.edges and ev.u in tr.vertices[P.last_edge] and _key(tr, P.last_edge) < hk
            )
            if covering < f + 1:
                fail("FirstRoundCover", f"pair ({ev.u},{ev.v}) of {ev.h} has {covering} covers", ev)
            rep.certified += 1
            continue
        A = overlapping_paths(ev.q_u, ev.snapshot)
        if 2 * len(A) < len(ev.q_u):
            rep.anomalies["HalfOverlap"] += 1
            logger.info("half-overlap anomaly: %d/%d overlapping at i=%d (%d,%d,h=%d)",
                        len(A), len(ev.q_u), ev.i, ev.u, ev.v, ev.h)
            continue
        pairs = count_disjoint_pairs(ev.q_u, ev.snapshot, f)
        if pairs >= 2 * f + 1:
            rep.certified += 1
        elif len(A) >= 4 * (k + r) * f:
            fail("DisjointPairs", f"only {pairs} disjoint pairs for ({ev.u},{ev.v},{ev.h})", ev)
        else:
            rep.anomalies["DisjointPairs"] += 1
    if rep.anomalies:
        logger.warning("replay anomalies: %s over %d discard events", dict(rep.anomalies), rep.sd_events)
    return rep
