"""Concept selection: AIC stepwise search and recursive feature elimination."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .models import fit_linear, fit_logistic, residual_sum_of_squares


@dataclass(frozen=True)
class SelectionResult:
    kept: tuple[str, ...]
    dropped: dict[str, str] = field(default_factory=dict)
    score: float = float("nan")
    method: str = "?"

    def to_dict(self):
        return {"method": self.method, "kept": list(self.kept),
                "dropped": dict(self.dropped), "score": self.score}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(data["kept"]), dict(data["dropped"]),
                   data["score"], data["method"])


def aic_of_subset(X, y, subset) -> float:
    """Gaussian OLS AIC: n*ln(RSS/n) + 2k with k = columns + intercept."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    if subset:
        model = fit_linear(X[:, list(subset)], y)
        rss = residual_sum_of_squares(model, X[:, list(subset)], y)
    else:
        rss = float(np.sum((y - y.mean()) ** 2))
    rss = max(rss, 1e-300)  # guard log of an exact fit
    return n * math.log(rss / n) + 2.0 * (len(subset) + 1)


def aic_stepwise(X, y, columns=None, direction: str = "both") -> SelectionResult:
    """Greedy stepwise AIC search over OLS submodels.

    Stops when no single add/drop lowers the AIC; ties break to the lowest
    column index.  The kept set is never empty: a search that ends empty
    falls back to the best single column.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    p = X.shape[1]
    if columns is None:
        columns = [f"x{i}" for i in range(p)]
    if direction not in ("forward", "backward", "both"):
        raise ValueError(f"unknown direction {direction!r}")

    current: list[int] = list(range(p)) if direction == "backward" else []
    current_aic = aic_of_subset(X, y, current)

    allow_add = direction in ("forward", "both")
    allow_drop = direction in ("backward", "both")

    while True:
        best_move = None  # (aic, kind, index)
        if allow_add:
            for idx in range(p):
                if idx in current:
                    continue
                candidate_aic = aic_of_subset(X, y, current + [idx])
                if candidate_aic < current_aic and (
                        best_move is None or candidate_aic < best_move[0]):
                    best_move = (candidate_aic, "add", idx)
        if allow_drop:
            for idx in current:
                remaining = [i for i in current if i != idx]
                candidate_aic = aic_of_subset(X, y, remaining)
                if candidate_aic < current_aic and (
                        best_move is None or candidate_aic < best_move[0]):
                    best_move = (candidate_aic, "drop", idx)
        if best_move is None:
            break
        current_aic, kind, idx = best_move
        if kind == "add":
            current.append(idx)
        else:
            current.remove(idx)

    if not current:
        # Minimality rule: the kept set cannot be empty.
        singles = [(aic_of_subset(X, y, [i]), i) for i in range(p)]
        current_aic, best = min(singles)
        current = [best]

    kept_sorted = sorted(current)
    dropped = {}
    for idx in range(p):
        if idx in current:
            continue
        delta = aic_of_subset(X, y, kept_sorted + [idx]) - current_aic
        dropped[columns[idx]] = f"adding raises AIC by {delta:.3f}"
    return SelectionResult(
        kept=tuple(columns[i] for i in kept_sorted),
        dropped=dropped,
        score=current_aic,
        method=f"aic_stepwise/{direction}",
    )


def rfe(X, y, columns=None, target_count: int | None = None) -> SelectionResult:
    """Recursive feature elimination on a logistic base model.

    Drops the column with the smallest absolute standardized coefficient,
    one per round, until ``target_count`` remain.  Defaults to half the
    candidates, rounded up, with a floor of 3 (capped at the column count).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    p = X.shape[1]
    if columns is None:
        columns = [f"x{i}" for i in range(p)]
    if target_count is None:
        target_count = min(p, max(3, (p + 1) // 2))
    if target_count < 1:
        raise ValueError("target_count must be >= 1")
    target_count = min(target_count, p)

    active = list(range(p))
    dropped: dict[str, str] = {}
    round_number = 0
    separation_seen = False
    model = None
    while len(active) > target_count:
        round_number += 1
        model = fit_logistic(X[:, active], y,
                             columns=[columns[i] for i in active])
        separation_seen = separation_seen or model.separation_flag
        weights = np.abs(model.coefficients)
        loser_position = int(np.argmin(weights))  # ties: lowest index
        loser = active[loser_position]
        note = f"eliminated in round {round_number} (|coef|={weights[loser_position]:.4g})"
        if model.separation_flag:
            note += ", separation flagged"
        dropped[columns[loser]] = note
        active.pop(loser_position)

    final = fit_logistic(X[:, active], y, columns=[columns[i] for i in active])
    train_accuracy = float(np.mean((final.predict(X[:, active]) >= 0.5) == y))
    return SelectionResult(
        kept=tuple(columns[i] for i in active),
        dropped=dropped,
        score=train_accuracy,
        method="rfe",
    )
