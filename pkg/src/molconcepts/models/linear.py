"""Ordinary least squares on standardized concepts."""

from __future__ import annotations

import logging

import numpy as np

from .base import FittedModel, Standardization

log = logging.getLogger(__name__)


class LinearModel(FittedModel):
    variant = "linear"

    def __init__(self, columns, standardization, coefficients, intercept,
                 dropped_dependent=()):
        super().__init__(columns, standardization)
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.intercept = float(intercept)
        self.dropped_dependent = tuple(dropped_dependent)

    def _forward(self, Z):
        return Z @ self.coefficients + self.intercept

    def _payload(self):
        return {"coefficients": self.coefficients.tolist(),
                "intercept": self.intercept,
                "dropped_dependent": list(self.dropped_dependent)}

    @classmethod
    def from_dict(cls, data):
        return cls(data["columns"], Standardization.from_dict(data["standardization"]),
                   data["coefficients"], data["intercept"],
                   data.get("dropped_dependent", ()))


def _independent_columns(Z: np.ndarray, candidates) -> list[int]:
    """Greedy left-to-right subset of columns with full rank."""
    kept: list[int] = []
    for idx in candidates:
        trial = kept + [idx]
        if np.linalg.matrix_rank(Z[:, trial]) == len(trial):
            kept.append(idx)
    return kept


def fit_linear(X, y, columns=None) -> LinearModel:
    """OLS in standardized space; dependent columns dropped with a warning."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    n, p = X.shape
    if columns is None:
        columns = [f"x{i}" for i in range(p)]
    standardization = Standardization.fit(X)
    Z = standardization.transform(X)

    usable = [i for i in range(p) if i not in standardization.zero_variance]
    kept = usable
    if usable and np.linalg.matrix_rank(Z[:, usable]) < len(usable):
        kept = _independent_columns(Z, usable)
        dropped = sorted(set(usable) - set(kept))
        log.warning("dropping dependent columns %s",
                    [columns[i] for i in dropped])
    dropped_dependent = tuple(columns[i] for i in sorted(set(usable) - set(kept)))

    coefficients = np.zeros(p)
    intercept = float(y.mean())
    if kept:
        design = Z[:, kept]
        beta, *_ = np.linalg.lstsq(design, y - intercept, rcond=None)
        coefficients[kept] = beta
    return LinearModel(columns, standardization, coefficients, intercept,
                       dropped_dependent)


def residual_sum_of_squares(model: LinearModel, X, y) -> float:
    predictions = model.predict(X)
    residuals = np.asarray(y, dtype=float) - predictions
    return float(residuals @ residuals)
