"""scikit-learn style wrapper: hypergraphs in, spectral feature rows out.

Usable inside a ``Pipeline``; fitting only validates the input and fixes
the feature list, so there is no learned state beyond that.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import zagreb
from .core import Hypergraph, degree_stats, parse_hypergraph, rank_corank
from .errors import BadParams
from .spectra import adjacency_matrix, energy

FEATURES = (
    "n",
    "m",
    "rank",
    "corank",
    "max_degree",
    "min_degree",
    "avg_degree",
    "zagreb",
    "energy",
    "spectral_radius",
    "positive_sum",
    "sum_squares",
)


def check_hypergraph(h, multi: bool = False) -> Hypergraph:
    """Coerce one input: a Hypergraph, ``.hg`` text, or an iterable of edges."""
    if isinstance(h, Hypergraph):
        if h.multi and not multi:
            raise BadParams("multi-hypergraph given but multi=False")
        return h
    if isinstance(h, str):
        return parse_hypergraph(h, multi=multi)
    try:
        edges = [list(e) for e in h]
    except TypeError:
        raise BadParams(f"cannot interpret {type(h).__name__} as a hypergraph") from None
    return Hypergraph(edges, multi=multi)


def check_hypergraphs(X, multi: bool = False) -> list[Hypergraph]:
    if isinstance(X, (Hypergraph, str)):
        raise BadParams("expected a sequence of hypergraphs, got a single one")
    out = [check_hypergraph(h, multi) for h in X]
    if not out:
        raise BadParams("empty input")
    return out


def _row(H: Hypergraph, exact) -> dict:
    rep = energy(H, exact=exact)
    r, s = rank_corank(H) if H.m else (0, 0)
    Delta, delta, avg = degree_stats(H)
    A = adjacency_matrix(H)
    return {
        "n": H.n,
        "m": H.m,
        "rank": r,
        "corank": s,
        "max_degree": Delta,
        "min_degree": delta,
        "avg_degree": float(avg),
        "zagreb": zagreb(H) if H.m else 0,
        "energy": rep.energy,
        "spectral_radius": rep.spectral_radius,
        "positive_sum": rep.positive_sum,
        "sum_squares": int((A * A).sum()),
    }


class HypergraphEnergy(TransformerMixin, BaseEstimator):
    """Map each hypergraph to a row of spectral and degree features.

    Parameters
    ----------
    features : sequence of str or None
        Subset of ``FEATURES`` to emit, in order.  None means all.
    exact : bool or None
        Passed to :func:`hyperspec.spectra.energy`; None lets small inputs
        get an exact parity certificate.
    multi : bool
        Accept multi-hypergraphs.
    """

    def __init__(self, features=None, exact=False, multi=False):
        self.features = features
        self.exact = exact
        self.multi = multi

    def fit(self, X, y=None):
        feats = tuple(FEATURES if self.features is None else self.features)
        unknown = [f for f in feats if f not in FEATURES]
        if unknown or not feats:
            raise BadParams(f"unknown or empty feature list: {unknown or feats}")
        check_hypergraphs(X, self.multi)
        self.features_ = feats
        self.n_features_out_ = len(feats)
        return self

    def transform(self, X):
        check_is_fitted(self, "features_")
        graphs = check_hypergraphs(X, self.multi)
        rows = [_row(H, self.exact) for H in graphs]
        return np.array([[row[f] for f in self.features_] for row in rows], dtype=float)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "features_")
        return np.asarray(self.features_, dtype=object)
