"""Two-layer MLP trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np

from ..errors import NonFiniteLoss
from .base import FittedModel, Standardization


def _relu(z):
    return np.maximum(z, 0.0)


def _sigmoid(z):
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    expz = np.exp(z[~positive])
    out[~positive] = expz / (1.0 + expz)
    return out


class MlpModel(FittedModel):
    variant = "mlp"

    def __init__(self, columns, standardization, w1, b1, w2, b2,
                 task="regression", hidden_width=None, seed=0):
        super().__init__(columns, standardization)
        self.w1 = np.asarray(w1, dtype=float)
        self.b1 = np.asarray(b1, dtype=float)
        self.w2 = np.asarray(w2, dtype=float)
        self.b2 = float(np.asarray(b2, dtype=float).reshape(()))
        self.task = task
        self.hidden_width = hidden_width or self.w1.shape[1]
        self.seed = seed
        self.activation = "relu"

    def _forward(self, Z):
        hidden = _relu(Z @ self.w1 + self.b1)
        raw = hidden @ self.w2 + self.b2
        if self.task == "classification":
            return _sigmoid(raw)
        return raw

    def _payload(self):
        return {"w1": self.w1.tolist(), "b1": self.b1.tolist(),
                "w2": self.w2.tolist(), "b2": self.b2,
                "task": self.task, "hidden_width": self.hidden_width,
                "activation": self.activation, "seed": self.seed}

    @classmethod
    def from_dict(cls, data):
        return cls(data["columns"],
                   Standardization.from_dict(data["standardization"]),
                   data["w1"], data["b1"], data["w2"], data["b2"],
                   data.get("task", "regression"), data.get("hidden_width"),
                   data.get("seed", 0))


def init_parameters(n_features: int, hidden_width: int, seed: int):
    rng = np.random.default_rng(seed)
    w1 = rng.normal(0.0, np.sqrt(2.0 / n_features), size=(n_features, hidden_width))
    b1 = np.zeros(hidden_width)
    w2 = rng.normal(0.0, np.sqrt(1.0 / hidden_width), size=hidden_width)
    b2 = 0.0
    return w1, b1, w2, b2


def loss_and_gradients(params, Z, y, task):
    """Mean loss and analytic gradients for every layer parameter."""
    w1, b1, w2, b2 = params
    n = Z.shape[0]
    pre_hidden = Z @ w1 + b1
    hidden = _relu(pre_hidden)
    raw = hidden @ w2 + b2

    if task == "classification":
        prob = _sigmoid(raw)
        loss = float(np.mean(
            np.logaddexp(0.0, raw) - y * raw))  # mean BCE
        d_raw = (prob - y) / n
    else:
        diff = raw - y
        loss = float(np.mean(diff ** 2))
        d_raw = 2.0 * diff / n

    grad_w2 = hidden.T @ d_raw
    grad_b2 = float(d_raw.sum())
    d_hidden = np.outer(d_raw, w2)
    d_hidden[pre_hidden <= 0] = 0.0
    grad_w1 = Z.T @ d_hidden
    grad_b1 = d_hidden.sum(axis=0)
    return loss, (grad_w1, grad_b1, grad_w2, grad_b2)


def fit_mlp(X, y, columns=None, hidden_width: int = 32, epochs: int = 2000,
            learning_rate: float = 1e-2, seed: int = 0,
            task: str = "regression") -> MlpModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if hidden_width < 1:
        raise ValueError("hidden_width must be >= 1")
    if columns is None:
        columns = [f"x{i}" for i in range(X.shape[1])]

    standardization = Standardization.fit(X)
    Z = standardization.transform(X)
    w1, b1, w2, b2 = init_parameters(X.shape[1], hidden_width, seed)
    with np.errstate(over="ignore", invalid="ignore"):
        for epoch in range(epochs):
            loss, (g_w1, g_b1, g_w2, g_b2) = loss_and_gradients(
                (w1, b1, w2, b2), Z, y, task)
            if not np.isfinite(loss):
                raise NonFiniteLoss(
                    f"loss became {loss} at epoch {epoch} "
                    f"(lr={learning_rate}, hidden={hidden_width}, seed={seed})")
            w1 = w1 - learning_rate * g_w1
            b1 = b1 - learning_rate * g_b1
            w2 = w2 - learning_rate * g_w2
            b2 = b2 - learning_rate * g_b2
    return MlpModel(columns, standardization, w1, b1, w2, b2, task,
                    hidden_width, seed)
