"""Evaluation metrics: RMSE, accuracy, AUC-ROC, Pearson r."""

from __future__ import annotations

import numpy as np

from .errors import ConstantVector, LengthMismatch, SingleClass


def _pair(y_true, y_pred):
    a = np.asarray(y_true, dtype=float)
    b = np.asarray(y_pred, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"shapes {a.shape} vs {b.shape}")
    if a.size == 0:
        raise LengthMismatch("empty input")
    return a, b


def rmse(y_true, y_pred) -> float:
    a, b = _pair(y_true, y_pred)
    return float(np.sqrt(np.mean((a - b) ** 2)))


def accuracy(y_true, y_pred) -> float:
    a, b = _pair(y_true, y_pred)
    return float(np.mean(a == b))


def auc_roc(y_true, scores) -> float:
    """Mann-Whitney AUC: P(random positive outranks random negative), ties 0.5."""
    y, s = _pair(y_true, scores)
    positives = s[y == 1]
    negatives = s[y == 0]
    if positives.size == 0 or negatives.size == 0:
        raise SingleClass("both classes required for AUC-ROC")
    # Average ranks over the pooled scores (midranks for ties).
    pooled = np.concatenate([positives, negatives])
    order = np.argsort(pooled, kind="mergesort")
    ranks = np.empty(pooled.size, dtype=float)
    sorted_scores = pooled[order]
    i = 0
    while i < pooled.size:
        j = i
        while j + 1 < pooled.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum = ranks[:positives.size].sum()
    u = rank_sum - positives.size * (positives.size + 1) / 2.0
    return float(u / (positives.size * negatives.size))


def pearson_r(x, y) -> float:
    a, b = _pair(x, y)
    if a.size < 2:
        raise LengthMismatch("need at least two points")
    da = a - a.mean()
    db = b - b.mean()
    denom = np.sqrt((da ** 2).sum() * (db ** 2).sum())
    if denom == 0.0:
        raise ConstantVector("pearson r undefined for a constant input")
    return float((da * db).sum() / denom)


def fraction_high_correlation(r_values, threshold: float = 0.7) -> float:
    values = np.asarray(list(r_values), dtype=float)
    if values.size == 0:
        return 0.0  # convention for an empty list
    return float(np.mean(values >= threshold))
