"""Scikit-learn style wrappers around the signal operators.

Each row of X is one signal sampled on a shared uniform grid described by
(x_min, step).  The transformers are stateless: fit only validates input
and records the grid, so they compose with sklearn pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .matching import bottleneck
from .operators import ShiftParams, convolve_box, denoise, grid_radii
from .persistence import sublevel_pd0
from .signal import EdgePolicy, Signal


def _rows_to_signals(X, x_min, step, edge_policy):
    X = check_array(X, ensure_min_features=2)
    return X, [Signal(x_min, step, row, edge_policy) for row in X]


class ShiftDenoiser(TransformerMixin, BaseEstimator):
    """Removes impulsive bumps by a min-shift followed by a max-shift.

    Radii may be given directly (epsilon, delta) or derived from the noise
    family parameters as (2, 1) * sigma / beta when left as 'auto'.
    """

    def __init__(self, epsilon="auto", delta="auto", sigma=1.1, beta=11.0,
                 x_min=0.0, step=1.0, edge_policy="zero"):
        self.epsilon = epsilon
        self.delta = delta
        self.sigma = sigma
        self.beta = beta
        self.x_min = x_min
        self.step = step
        self.edge_policy = edge_policy

    def _params(self) -> ShiftParams:
        if self.epsilon == "auto" or self.delta == "auto":
            auto = grid_radii(self.sigma, self.beta, self.step)
        eps = auto.epsilon if self.epsilon == "auto" else float(self.epsilon)
        delta = auto.delta if self.delta == "auto" else float(self.delta)
        return ShiftParams(epsilon=eps, delta=delta)

    def _policy(self) -> EdgePolicy:
        return EdgePolicy(self.edge_policy)

    def fit(self, X, y=None):
        check_array(X, ensure_min_features=2)
        self._params()  # validate radii early
        self.n_features_in_ = np.shape(X)[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X, signals = _rows_to_signals(X, self.x_min, self.step, self._policy())
        p = self._params()
        return np.vstack([denoise(s, p).values for s in signals])


class BoxConvolver(TransformerMixin, BaseEstimator):
    """Baseline smoothing: convolution with a unit-mass box kernel."""

    def __init__(self, h=10.0, x_min=0.0, step=1.0, edge_policy="zero"):
        self.h = h
        self.x_min = x_min
        self.step = step
        self.edge_policy = edge_policy

    def fit(self, X, y=None):
        if self.h <= 0:
            raise ValueError("h must be positive")
        check_array(X, ensure_min_features=2)
        self.n_features_in_ = np.shape(X)[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X, signals = _rows_to_signals(X, self.x_min, self.step,
                                      EdgePolicy(self.edge_policy))
        return np.vstack([convolve_box(s, self.h).values for s in signals])


class SublevelDiagram(TransformerMixin, BaseEstimator):
    """Maps each signal row to its degree-0 sublevel persistence diagram."""

    def __init__(self, x_min=0.0, step=1.0):
        self.x_min = x_min
        self.step = step

    def fit(self, X, y=None):
        check_array(X, ensure_min_features=2)
        self.n_features_in_ = np.shape(X)[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X, signals = _rows_to_signals(X, self.x_min, self.step, EdgePolicy.ZERO)
        out = np.empty(len(signals), dtype=object)
        for i, s in enumerate(signals):
            out[i] = sublevel_pd0(s)
        return out


def pairwise_bottleneck(diagrams_a, diagrams_b) -> np.ndarray:
    """Bottleneck distance between corresponding diagrams of two batches."""
    if len(diagrams_a) != len(diagrams_b):
        raise ValueError("batches must have equal length")
    return np.array([bottleneck(a, b).distance
                     for a, b in zip(diagrams_a, diagrams_b)])
