"""Randomized fault-tolerant clustering construction of f-EFT (2k-1)-hyperspanners.

The construction runs k iterations. Iteration i samples the centers Z_i from
Z_{i-1}, and every still-active vertex v scans its postponed hyperedges in
order of increasing (weight, id). For each postponed pair (u, v) of a
hyperedge h it looks for a sampled cluster path P of u that is edge-disjoint
from, and head-disjoint with, the paths v already holds. When one exists, h
is kept and the path ``h o P`` is recorded for v. When none exists the pair
is safely discarded. A vertex stays active while it collects a full quota
of K_f = 12(k+r)f paths whose head holds a surviving center.

Cluster paths start at a cluster center and end at the vertex that owns
them. Their head is the center: ``h o P`` inherits the head of P, and the
trivial path at v has head {v}.

In the first iteration every cluster is a single vertex, so "sufficiently
many short edge-disjoint u-v paths" means f+1 already-kept hyperedges
through both u and v with smaller (weight, id). That is the default
``first_round="cover"`` rule. ``first_round="literal"`` applies the head
test to the trivial clusters as well. It then discards a pair after a single
covering hyperedge, so it is not fault tolerant when hyperedges overlap in
two or more vertices. It is kept for comparison.
"""
from __future__ import annotations

import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from .base import SpannerEstimator
from .exceptions import InvariantViolation
from .hypercore import HyperPath
from .validation import check_hypergraph, check_positive_int

logger = logging.getLogger(__name__)

KP = "kp"
SD = "sd"
PP = "pp"


def _pair(u, v):
    return (u, v) if u < v else (v, u)


class TripleStatusLedger:
    """Status of every (hyperedge, vertex pair) triple.

    A hyperedge is either wholly kept or carries the set of its discarded
    pairs; every other pair is postponed.
    """

    def __init__(self):
        self._kp = set()
        self._sd = {}

    def get(self, u, v, h):
        if h in self._kp:
            return KP
        pairs = self._sd.get(h)
        if pairs is not None and _pair(u, v) in pairs:
            return SD
        return PP

    def set_kp(self, h):
        self._kp.add(h)

    def set_sd(self, u, v, h):
        if h in self._kp:
            raise InvariantViolation("StatusMonotone", f"discarding pair of kept hyperedge {h}")
        self._sd.setdefault(h, set()).add(_pair(u, v))

    def is_kept(self, h):
        return h in self._kp

    @property
    def kept(self):
        return frozenset(self._kp)

    def pp_pairs(self, edge):
        if edge.id in self._kp:
            return []
        sd = self._sd.get(edge.id, ())
        vs = edge.vertices
        return [
            (a, b)
            for x, a in enumerate(vs)
            for b in vs[x + 1:]
            if (a, b) not in sd
        ]

    def edge_status(self, edge):
        if edge.id in self._kp:
            return KP
        return PP if self.pp_pairs(edge) else SD

    def counts(self, H):
        c = Counter()
        for e in H.edges:
            if e.id in self._kp:
                c["kp_edges"] += 1
                continue
            sd = len(self._sd.get(e.id, ()))
            total = len(e) * (len(e) - 1) // 2
            c["sd_pairs"] += sd
            c["pp_pairs"] += total - sd
            if sd == total:
                c["sd_edges"] += 1
            else:
                c["pp_edges"] += 1
        return dict(c)


@dataclass(frozen=True)
class Params:
    """Parameters of the clustering construction.

    ``sample_const`` scales the per-vertex path sample, c_s * ceil(log2 n).
    ``path_quota`` overrides K_f = 12(k+r)f and is meant for exercising
    later iterations on small inputs.
    """

    k: int = 2
    f: int = 1
    sample_const: float = 4.0
    seed: int = 0
    path_quota: int = None
    first_round: str = "cover"

    def __post_init__(self):
        check_positive_int("k", self.k, 2)
        check_positive_int("f", self.f, 1)
        if not self.sample_const > 0:
            raise ValueError("sample_const must be positive")
        if self.path_quota is not None:
            check_positive_int("path_quota", self.path_quota, 1)
        if self.first_round not in ("cover", "literal"):
            raise ValueError(f"unknown first_round rule {self.first_round!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def quota(self, r):
        if self.path_quota is not None:
            return self.path_quota
        return 12 * (self.k + r) * self.f

    def center_probability(self, n, r):
        if n <= 1:
            return 1.0
        return min(1.0, self.f ** (1.0 / (r * self.k)) / n ** (1.0 / self.k))

    def sample_size(self, n):
        return max(1, math.ceil(self.sample_const * math.ceil(math.log2(max(n, 2)))))


@dataclass
class ClusterState:
    i: int
    Z: frozenset
    V: frozenset
    Q: dict
    R: frozenset
    H: frozenset
    rng: np.random.Generator = field(repr=False)


@dataclass(frozen=True)
class IterationStats:
    i: int
    centers: int
    active: int
    postponed: int
    added_edges: int
    max_paths: int
    wall_ms: float


@dataclass(frozen=True)
class SdEvent:
    i: int
    v: int
    u: int
    h: int
    snapshot: tuple
    q_u: tuple
    sample: tuple


@dataclass
class IterationTrace:
    i: int
    Z: frozenset
    V_prev: frozenset
    V: frozenset
    Q_prev: dict
    P: dict
    Q: dict
    R_prev: frozenset
    R: frozenset
    H_prev: frozenset
    H: frozenset
    pp_pairs: dict


@dataclass
class Trace:
    """Everything needed to re-check a build offline.

    ``weights`` and ``vertices`` are copies indexed by hyperedge id so that a
    trace can be inspected (or deliberately corrupted) without the host.
    """

    params: Params
    n: int
    rank: int
    weights: dict
    vertices: dict
    iterations: list = field(default_factory=list)
    sd_events: list = field(default_factory=list)
    kept: frozenset = frozenset()


@dataclass
class BuildStats:
    params: Params
    n: int
    m: int
    rank: int
    quota: int
    center_probability: float
    iterations: list = field(default_factory=list)
    status_counts: dict = field(default_factory=dict)
    size: int = 0
    wall_ms: float = 0.0
    path_count_threshold: float = 0.0
    envelope_headline: float = 0.0
    envelope_body: float = 0.0
    warnings: list = field(default_factory=list)
    trace: Trace = None

    TSV_HEADER = "i\t|Z_i|\t|V_i|\t|R_i|\tadded_edges\tmax_Pv\twall_ms"

    def to_tsv(self):
        rows = [self.TSV_HEADER]
        for it in self.iterations:
            rows.append(
                f"{it.i}\t{it.centers}\t{it.active}\t{it.postponed}\t"
                f"{it.added_edges}\t{it.max_paths}\t{it.wall_ms:.3f}"
            )
        return "\n".join(rows) + "\n"


def size_envelopes(n, r, k, f):
    """(headline, body) size envelopes k^2 f^{1-1/(rk)} n^{1+1/k} log2 n and
    k(k+r) f^{1-1/(rk)} n^{1+1/k} log2 n."""
    if n <= 1:
        return 0.0, 0.0
    core = f ** (1 - 1 / (r * k)) * n ** (1 + 1 / k) * math.log2(n)
    return k * k * core, k * (k + r) * core


def path_count_threshold(n, r, k, f):
    """Per-vertex path count above which enough sampled paths exist w.h.p."""
    if n <= 1:
        return 0.0
    return 16 * (k + r) * f ** (1 - 1 / (r * k)) * n ** (1 / k) * math.log2(n)


def _sort_key(edge):
    return (edge.weight, edge.id)


def initial_state(H, params):
    V = frozenset(range(H.n))
    return ClusterState(
        i=0,
        Z=V,
        V=V,
        Q={v: (HyperPath.trivial(v),) for v in range(H.n)},
        R=frozenset(H.ids),
        H=frozenset(),
        rng=np.random.default_rng(int(params.seed)),
    )


def icompute(H, state, ledger, params, trace=None):
    """One clustering iteration: returns ``(next_state, IterationStats)``."""
    t0 = time.perf_counter()
    i = state.i + 1
    k, f = params.k, params.f
    r = max(H.rank, 2)
    n = H.n
    quota = params.quota(r)
    rng = state.rng

    if i <= k - 1:
        p = params.center_probability(n, r)
        zs = sorted(state.Z)
        draws = rng.random(len(zs))
        Z = frozenset(z for z, x in zip(zs, draws) if x < p)
    else:
        Z = frozenset()

    active = sorted(state.V)
    budget = params.sample_size(n)
    samples = {}
    for v in active:
        Qv = state.Q[v]
        size = min(len(Qv), budget)
        picks = rng.choice(len(Qv), size=size, replace=False)
        samples[v] = tuple(Qv[j] for j in picks)

    cover_rule = i == 1 and params.first_round == "cover"
    R_prev = state.R
    P_final = {}
    Q_next = {}
    for v in active:
        n_v = 0
        Pv = list(state.Q[v])
        used = {e for P in Pv for e in P.edges}
        heads = set().union(*(P.head for P in Pv))
        qheads = set()
        Qv_next = []
        cover = Counter()
        scan = sorted(
            (H.edges[j] for j in H.incidence[v] if H.edges[j].id in R_prev),
            key=_sort_key,
        )
        for h in scan:
            for u in h.vertices:
                if u == v or ledger.get(u, v, h.id) != PP:
                    continue
                chosen = None
                if cover_rule:
                    if cover[u] <= f:
                        chosen = samples[u][0]
                else:
                    if u not in samples:
                        raise InvariantViolation(
                            "PostponedHeavier", f"pp triple ({u},{v},{h.id}) with inactive u at i={i}"
                        )
                    for P in samples[u]:
                        if used.isdisjoint(P.edges) and heads.isdisjoint(P.head):
                            chosen = P
                            break
                if chosen is None:
                    if trace is not None:
                        trace.sd_events.append(
                            SdEvent(i, v, u, h.id, tuple(Pv), state.Q.get(u, ()), samples.get(u, ()))
                        )
                    ledger.set_sd(u, v, h.id)
                    continue
                new = chosen.extend(h.id, v)
                Pv.append(new)
                used.update(new.edges)
                heads |= chosen.head
                if cover_rule:
                    for x in h.vertices:
                        if x != v:
                            cover[x] += 1
                ledger.set_kp(h.id)
                if Z & chosen.head and qheads.isdisjoint(chosen.head):
                    n_v += 1
                    qheads |= chosen.head
                    Qv_next.append(new)
                break
            if n_v == quota:
                break
        P_final[v] = tuple(Pv)
        if n_v == quota:
            Q_next[v] = tuple(Qv_next)

    V_next = frozenset(Q_next)
    H_next = set(state.H)
    for paths in P_final.values():
        for P in paths:
            H_next.update(P.edges)
    H_next = frozenset(H_next)
    R_next = frozenset(
        e.id for e in H.edges if e.id in R_prev and e.id not in H_next
        and ledger.edge_status(e) == PP
    )
    if ledger.kept != H_next:
        raise InvariantViolation("KeptSet", f"kp set differs from H_{i}")

    wall_ms = (time.perf_counter() - t0) * 1e3
    it = IterationStats(
        i=i,
        centers=len(Z),
        active=len(V_next),
        postponed=len(R_next),
        added_edges=len(H_next) - len(state.H),
        max_paths=max((len(p) for p in P_final.values()), default=0),
        wall_ms=wall_ms,
    )
    if trace is not None:
        trace.iterations.append(
            IterationTrace(
                i=i, Z=Z, V_prev=state.V, V=V_next, Q_prev=dict(state.Q), P=P_final,
                Q=Q_next, R_prev=R_prev, R=R_next, H_prev=state.H, H=H_next,
                pp_pairs={h: ledger.pp_pairs(H.edge(h)) for h in R_next},
            )
        )
    nxt = ClusterState(i=i, Z=Z, V=V_next, Q=Q_next, R=R_next, H=H_next, rng=rng)
    return nxt, it


def build(H, params, trace=False):
    """Build an f-EFT (2k-1)-hyperspanner. Returns ``(spanner, BuildStats)``.

    With ``trace=True`` the stats carry a :class:`Trace` for
    :func:`hyperspan.verify.replay_invariants`.
    """
    H = check_hypergraph(H)
    t0 = time.perf_counter()
    r = max(H.rank, 2)
    k, f = params.k, params.f
    stats = BuildStats(
        params=params, n=H.n, m=H.m, rank=H.rank, quota=params.quota(r),
        center_probability=params.center_probability(H.n, r),
    )
    stats.path_count_threshold = path_count_threshold(H.n, r, k, f)
    stats.envelope_headline, stats.envelope_body = size_envelopes(H.n, r, k, f)
    tr = None
    if trace:
        tr = Trace(
            params=params, n=H.n, rank=H.rank,
            weights={e.id: e.weight for e in H.edges},
            vertices={e.id: e.vertices for e in H.edges},
        )
    ledger = TripleStatusLedger()
    state = initial_state(H, params)
    for _ in range(k):
        state, it = icompute(H, state, ledger, params, trace=tr)
        stats.iterations.append(it)
        if it.max_paths > stats.path_count_threshold:
            msg = (f"iteration {it.i}: max |P(v)| = {it.max_paths} exceeds "
                   f"{stats.path_count_threshold:.1f}")
            stats.warnings.append(msg)
            logger.warning(msg)
    if state.R:
        raise InvariantViolation("Termination", f"{len(state.R)} hyperedges still postponed")
    spanner = H.restrict(state.H)
    stats.size = spanner.m
    stats.status_counts = ledger.counts(H)
    stats.wall_ms = (time.perf_counter() - t0) * 1e3
    if tr is not None:
        tr.kept = ledger.kept
        stats.trace = tr
    return spanner, stats


def _conflict(Q, P):
    return not Q.head.isdisjoint(P.head) or not set(Q.edges).isdisjoint(P.edges)


def _check_disjoint_family(paths, label):
    seen_edges = set()
    seen_heads = set()
    for P in paths:
        if not seen_edges.isdisjoint(P.edges):
            raise InvariantViolation("DisjointPairsPrecondition", f"{label} paths share a hyperedge")
        if not seen_heads.isdisjoint(P.head):
            raise InvariantViolation("DisjointPairsPrecondition", f"{label} heads overlap")
        seen_edges.update(P.edges)
        seen_heads |= P.head


def overlapping_paths(Qu, Pv):
    """Paths of ``Qu`` sharing a hyperedge or head vertex with some path of ``Pv``."""
    return [Q for Q in Qu if any(_conflict(Q, P) for P in Pv)]


def count_disjoint_pairs(Qu, Pv, f=None):
    """Greedily extract conflicting pairs (Q_j, P_j) from ``Qu x Pv``.

    Each round takes the first remaining Q, pairs it with the first path of
    ``Pv`` it conflicts with, removes that path, and drops every Q that
    conflicts with it. Returns the number of pairs extracted; each pair
    yields a u-v route, and the routes of distinct pairs share no faults
    beyond what two edge-disjoint families allow.
    """
    Qu = list(Qu)
    Pv = list(Pv)
    _check_disjoint_family(Qu, "Q")
    _check_disjoint_family(Pv, "P")
    A = overlapping_paths(Qu, Pv)
    B = Pv
    count = 0
    while A:
        Q = A[0]
        P = next((P for P in B if _conflict(Q, P)), None)
        if P is None:
            raise InvariantViolation("DisjointPairs", "remaining path has no partner")
        B = [x for x in B if x is not P]
        A = [x for x in A if not _conflict(x, P)]
        count += 1
    return count


class ClusterSpanner(SpannerEstimator):
    """f-EFT (2k-1)-hyperspanner by randomized fault-tolerant clustering.

    Parameters
    ----------
    k : int, default=2
        Stretch parameter (k >= 2); output stretch is 2k-1.
    f : int, default=1
        Number of hyperedge faults tolerated.
    sample_const : float, default=4.0
        Multiplier of the per-vertex O(log n) path sample.
    random_state : int or None
        Seed; None draws one from OS entropy.
    path_quota : int or None
        Override for K_f = 12(k+r)f.
    first_round : {"cover", "literal"}
        Discard rule for single-vertex clusters (see module docstring).
    trace : bool, default=False
        Record a replayable trace in ``trace_``.

    Attributes
    ----------
    spanner_ : Hypergraph
    stats_ : BuildStats
    trace_ : Trace or None
    """

    def __init__(self, k=2, f=1, sample_const=4.0, random_state=None,
                 path_quota=None, first_round="cover", trace=False):
        self.k = k
        self.f = f
        self.sample_const = sample_const
        self.random_state = random_state
        self.path_quota = path_quota
        self.first_round = first_round
        self.trace = trace

    def _params(self):
        seed = self.random_state
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        return Params(k=self.k, f=self.f, sample_const=self.sample_const, seed=seed,
                      path_quota=self.path_quota, first_round=self.first_round)

    def fit(self, H, y=None):
        H = check_hypergraph(H)
        self.params_ = self._params()
        spanner, self.stats_ = build(H, self.params_, trace=self.trace)
        self.trace_ = self.stats_.trace
        return self._set_result(H, spanner)


def reseeded(params):
    """Params for the single retry after a failed certification: fresh seed,
    doubled path sample."""
    seed = int(np.random.SeedSequence(int(params.seed)).generate_state(1, np.uint64)[0])
    return replace(params, seed=seed, sample_const=2 * params.sample_const)
