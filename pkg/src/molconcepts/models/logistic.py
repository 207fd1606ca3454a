"""Logistic regression fit by iteratively reweighted least squares."""

from __future__ import annotations

import numpy as np

from .base import FittedModel, Standardization

_SEPARATION_NORM = 1e4


def _sigmoid(z):
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    expz = np.exp(z[~positive])
    out[~positive] = expz / (1.0 + expz)
    return out


class LogisticModel(FittedModel):
    variant = "logistic"

    def __init__(self, columns, standardization, coefficients, intercept,
                 separation_flag=False, n_iterations=0):
        super().__init__(columns, standardization)
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.intercept = float(intercept)
        self.separation_flag = bool(separation_flag)
        self.n_iterations = int(n_iterations)

    def _forward(self, Z):
        return _sigmoid(Z @ self.coefficients + self.intercept)

    def decision_function(self, rows):
        Z = self.standardization.transform(self._check_rows(rows))
        return Z @ self.coefficients + self.intercept

    def _payload(self):
        return {"coefficients": self.coefficients.tolist(),
                "intercept": self.intercept,
                "separation_flag": self.separation_flag}

    @classmethod
    def from_dict(cls, data):
        return cls(data["columns"], Standardization.from_dict(data["standardization"]),
                   data["coefficients"], data["intercept"],
                   data.get("separation_flag", False))


def log_likelihood(model: LogisticModel, X, y) -> float:
    z = model.decision_function(X)
    y = np.asarray(y, dtype=float)
    # log sigma(z) = -log(1+exp(-z)), computed stably
    return float(np.sum(y * z - np.logaddexp(0.0, z)))


def fit_logistic(X, y, columns=None, max_iter: int = 100,
                 tol: float = 1e-8) -> LogisticModel:
    """Regularization-free MLE from zero initialization.

    Divergence of the coefficient norm marks perfect separation: the fit
    stops and the current model is returned with ``separation_flag`` set.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    n, p = X.shape
    if columns is None:
        columns = [f"x{i}" for i in range(p)]
    classes = set(np.unique(y))
    if not classes <= {0.0, 1.0} or len(classes) != 2:
        raise ValueError("fit_logistic needs binary 0/1 targets with both classes")

    standardization = Standardization.fit(X)
    Z = standardization.transform(X)
    design = np.hstack([np.ones((n, 1)), Z])
    beta = np.zeros(p + 1)
    separation = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        z = design @ beta
        prob = _sigmoid(z)
        gradient = design.T @ (y - prob)
        if np.linalg.norm(gradient) <= tol:
            break
        weights = prob * (1.0 - prob)
        hessian = design.T @ (design * weights[:, None])
        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError:
            separation = True
            break
        beta = beta + step
        if np.linalg.norm(beta) > _SEPARATION_NORM:
            separation = True
            break

    if not separation:
        # Saturated sigmoids zero the gradient exactly, ending the loop
        # without a diverged norm; enormous margins betray separation.
        z = design @ beta
        if np.all((z > 0) == (y == 1)) and np.min(np.abs(z)) > 15.0:
            separation = True

    return LogisticModel(columns, standardization, beta[1:], beta[0],
                         separation_flag=separation, n_iterations=iteration)
