"""Scaling benchmarks for the clustering construction.

Every suite yields rows ``(kind, n, k, f, r, seed, m, algo, value)``:
per-build ``size`` and ``wall_ms`` rows, then summary rows
(``mean_size``, ``size_ratio``, ``time_ratio``) whose seed column reads
``mean`` or ``median``.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from itertools import product

from .baseline import peeloff_eft
from .eftcluster import Params, build
from .instances import random_hypergraph

TSV_HEADER = ("kind", "n", "k", "f", "r", "seed", "m", "algo", "value")
DEFAULT_WEIGHTS = (1, 10)


@dataclass(frozen=True)
class Grid:
    n: tuple
    k: tuple
    f: tuple
    r: tuple

    @classmethod
    def parse(cls, text):
        """``"64:2:1,4:3"`` -> n=(64,), k=(2,), f=(1, 4), r=(3,)."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"grid needs 4 ':'-separated lists (n:k:f:r), got {text!r}")
        lists = []
        for p in parts:
            vals = tuple(int(x) for x in p.split(",") if x.strip())
            if not vals:
                raise ValueError(f"empty list in grid {text!r}")
            lists.append(vals)
        return cls(*lists)


def density_edges(n, density, exponent=1.5):
    return int(round(density * n ** exponent))


def _timed(fn, repeats):
    best = None
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        dt = (time.perf_counter() - t0) * 1e3
        best = dt if best is None else min(best, dt)
    return out, best


def size_scaling(grid, seed, seeds=5, density=4.0, weights=DEFAULT_WEIGHTS, baseline=True):
    """Output sizes of the clustering construction (and the peel-off
    baseline) over the grid, with m = density * n^1.5.

    ``size_ratio`` rows compare the mean size at each f to the mean at the
    smallest f of the grid.
    """
    rows = []
    means = {}
    f_lo = min(grid.f)
    for n, k, r in product(grid.n, grid.k, grid.r):
        m = density_edges(n, density)
        corpus = [random_hypergraph(n, m, r, weights, seed=seed + s) for s in range(seeds)]
        for f in grid.f:
            sizes = {"cluster": [], "peeloff": []}
            for s, H in enumerate(corpus):
                (S, _), ms = _timed(lambda: build(H, Params(k=k, f=f, seed=seed + s)), 1)
                sizes["cluster"].append(S.m)
                rows.append(("size", n, k, f, r, seed + s, m, "cluster", S.m))
                rows.append(("wall_ms", n, k, f, r, seed + s, m, "cluster", round(ms, 3)))
                if baseline:
                    (P, _), ms = _timed(lambda: peeloff_eft(H, k, f), 1)
                    sizes["peeloff"].append(P.m)
                    rows.append(("size", n, k, f, r, seed + s, m, "peeloff", P.m))
                    rows.append(("wall_ms", n, k, f, r, seed + s, m, "peeloff", round(ms, 3)))
            for algo, vals in sizes.items():
                if vals:
                    means[(n, k, f, r, algo)] = statistics.fmean(vals)
                    rows.append(("mean_size", n, k, f, r, "mean", m, algo,
                                 round(means[(n, k, f, r, algo)], 3)))
        for f in grid.f:
            if f == f_lo:
                continue
            for algo in ("cluster", "peeloff"):
                lo = means.get((n, k, f_lo, r, algo))
                hi = means.get((n, k, f, r, algo))
                if lo and hi is not None:
                    rows.append(("size_ratio", n, k, f, r, "mean", m, f"{algo}:f{f}/f{f_lo}",
                                 round(hi / lo, 4)))
    return rows


def time_scaling(grid, seed, seeds=5, density=4.0, weights=DEFAULT_WEIGHTS, repeats=3):
    """Wall time of the clustering construction at m and 2m edges,
    m = density * n^1.5. Each timing is the best of ``repeats`` runs; the
    ``time_ratio`` row is the median over seeds of t(2m)/t(m).
    """
    rows = []
    for n, k, f, r in product(grid.n, grid.k, grid.f, grid.r):
        m = density_edges(n, density)
        ratios = []
        for s in range(seeds):
            times = []
            for mm in (m, 2 * m):
                H = random_hypergraph(n, mm, r, weights, seed=seed + s)
                params = Params(k=k, f=f, seed=seed + s)
                _, ms = _timed(lambda: build(H, params), repeats)
                times.append(ms)
                rows.append(("wall_ms", n, k, f, r, seed + s, mm, "cluster", round(ms, 3)))
            ratios.append(times[1] / times[0])
        rows.append(("time_ratio", n, k, f, r, "median", m, "cluster:2m/m",
                     round(statistics.median(ratios), 4)))
    return rows


def dumps_rows(rows):
    lines = ["\t".join(TSV_HEADER)]
    lines.extend("\t".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def summary(rows, kind):
    """``{algo: value}`` for the summary rows of one kind."""
    return {row[7]: row[8] for row in rows if row[0] == kind}
