"""Estimator plumbing shared by every spanner construction.

Constructions follow the scikit-learn estimator conventions: hyperparameters
are set in ``__init__`` and exposed through ``get_params``; ``fit(H)`` learns
the set of hyperedge ids to keep; ``transform(H)`` restricts ``H`` to them.
"""
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .validation import check_hypergraph


class SpannerMixin:
    """Adds ``transform``/``fit_transform`` on top of a ``fit`` that sets
    ``edge_ids_``, ``spanner_`` and ``n_vertices_``."""

    def _set_result(self, H, spanner):
        self.n_vertices_ = H.n
        self.host_ids_ = frozenset(H.ids)
        self.edge_ids_ = frozenset(spanner.ids)
        self.spanner_ = spanner
        self.n_edges_ = spanner.m
        return self

    def transform(self, H):
        check_is_fitted(self, "edge_ids_")
        H = check_hypergraph(H)
        if H.n != self.n_vertices_ or frozenset(H.ids) != self.host_ids_:
            raise ValueError("transform() expects the hypergraph passed to fit()")
        return H.restrict(self.edge_ids_)

    def fit_transform(self, H, y=None):
        return self.fit(H).spanner_


class SpannerEstimator(SpannerMixin, BaseEstimator):
    pass
