"""Additive f-EFT hyperspanners: union of a fault-free +alpha hyperspanner
and an f-EFT multiplicative hyperspanner."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assoc import associated, lift
from .base import SpannerEstimator
from .baseline import additive2_spanner
from .eftcluster import Params, build
from .validation import check_hypergraph, check_positive_int, check_unit_weights

ALPHA = 2


def surplus_bound(f, r, alpha, mu, W):
    """Surplus f*r*(2*alpha + (mu-1)*W) + alpha."""
    if min(f, alpha, W) < 0 or r < 2 or mu < 1:
        raise ValueError("need f, alpha, W >= 0, r >= 2, mu >= 1")
    return f * r * (2 * alpha + (mu - 1) * W) + alpha


def per_pair_surplus(f, r, alpha, mu):
    """Callable for :func:`hyperspan.verify.verify_add` evaluating the
    surplus with the pair's own post-failure W_{s,t}."""
    def surplus(u, v, faults, w_st):
        return surplus_bound(f, r, alpha, mu, w_st)
    return surplus


@dataclass(frozen=True)
class SurplusBound:
    f: int
    r: int
    alpha: int
    mu: int
    W: float

    @property
    def value(self):
        return surplus_bound(self.f, self.r, self.alpha, self.mu, self.W)


def build_additive_eft(H, k_mult=2, f=1, seed=0, sample_const=4.0):
    """Return ``(S, SurplusBound, parts)`` with ``parts = (S_add, S_mult, stats)``.

    S_add is the lifted +2 spanner of the simple associated graph and S_mult
    the clustering f-EFT (2*k_mult - 1)-hyperspanner.
    """
    H = check_unit_weights(check_hypergraph(H))
    f = check_positive_int("f", f, 1)
    G = associated(H, simple=True)
    S_add = lift(G, additive2_spanner(G), H)
    S_mult, stats = build(H, Params(k=k_mult, f=f, sample_const=sample_const, seed=seed))
    S = H.restrict(set(S_add.ids) | set(S_mult.ids))
    W = H.max_weight if H.m else 1.0
    bound = SurplusBound(f=f, r=max(H.rank, 2), alpha=ALPHA, mu=2 * k_mult - 1, W=W)
    return S, bound, (S_add, S_mult, stats)


class AdditiveEFTSpanner(SpannerEstimator):
    """Additive f-EFT hyperspanner for unit-weight hypergraphs.

    Attributes
    ----------
    surplus_bound_ : SurplusBound
        Global bound with W = max hyperedge weight.
    additive_part_, multiplicative_part_ : Hypergraph
    """

    def __init__(self, k_mult=2, f=1, sample_const=4.0, random_state=None):
        self.k_mult = k_mult
        self.f = f
        self.sample_const = sample_const
        self.random_state = random_state

    def fit(self, H, y=None):
        seed = self.random_state
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        S, self.surplus_bound_, (a, m, self.stats_) = build_additive_eft(
            H, self.k_mult, self.f, seed=seed, sample_const=self.sample_const
        )
        self.additive_part_ = a
        self.multiplicative_part_ = m
        self.alpha_ = ALPHA
        self.mu_ = 2 * self.k_mult - 1
        return self._set_result(H, S)
