"""Greedy CART decision tree (gini or mse impurity)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import FittedModel, Standardization


@dataclass
class TreeNode:
    impurity: float
    n_samples: int
    value: float              # mean target (positive fraction for gini)
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self):
        return self.feature is None

    def to_dict(self, columns):
        record = {"impurity": round(float(self.impurity), 12),
                  "n_samples": int(self.n_samples),
                  "value": float(self.value)}
        if self.is_leaf:
            record["kind"] = "leaf"
        else:
            record.update({
                "kind": "split",
                "feature": columns[self.feature],
                "threshold": float(self.threshold),
                "left": self.left.to_dict(columns),
                "right": self.right.to_dict(columns),
            })
        return record

    @classmethod
    def from_dict(cls, data, columns):
        if data["kind"] == "leaf":
            return cls(data["impurity"], data["n_samples"], data["value"])
        return cls(
            data["impurity"], data["n_samples"], data["value"],
            feature=columns.index(data["feature"]),
            threshold=data["threshold"],
            left=cls.from_dict(data["left"], columns),
            right=cls.from_dict(data["right"], columns),
        )


def _impurity(y: np.ndarray, criterion: str) -> float:
    if y.size == 0:
        return 0.0
    if criterion == "gini":
        p = y.mean()
        return float(2.0 * p * (1.0 - p))
    return float(np.mean((y - y.mean()) ** 2))


def best_split(X, y, criterion, min_samples_leaf):
    """Scan all (feature, midpoint) candidates; ties resolve to the lowest
    column index, then the lowest threshold."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, p = X.shape
    best = None  # (weighted_impurity, feature, threshold)
    for feature in range(p):
        values = np.unique(X[:, feature])
        if values.size < 2:
            continue
        thresholds = (values[:-1] + values[1:]) / 2.0
        for threshold in thresholds:
            mask = X[:, feature] <= threshold
            n_left = int(mask.sum())
            if n_left < min_samples_leaf or n - n_left < min_samples_leaf:
                continue
            weighted = (n_left * _impurity(y[mask], criterion)
                        + (n - n_left) * _impurity(y[~mask], criterion)) / n
            if best is None or weighted < best[0] - 1e-15:
                best = (weighted, feature, threshold)
    return best


class TreeModel(FittedModel):
    variant = "tree"

    def __init__(self, columns, root: TreeNode, max_depth: int, criterion: str):
        # Trees split on raw values (thresholds stay interpretable), so the
        # stored standardization is the identity.
        super().__init__(columns, Standardization.identity(len(columns)))
        self.root = root
        self.max_depth = int(max_depth)
        self.criterion = criterion

    def _forward(self, Z):
        out = np.empty(Z.shape[0])
        for i, row in enumerate(Z):
            node = self.root
            while not node.is_leaf:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.value
        return out

    def _payload(self):
        return {"max_depth": self.max_depth, "criterion": self.criterion,
                "root": self.root.to_dict(list(self.columns))}

    @classmethod
    def from_dict(cls, data):
        columns = list(data["columns"])
        return cls(columns, TreeNode.from_dict(data["root"], columns),
                   data["max_depth"], data["criterion"])


def fit_tree(X, y, columns=None, max_depth: int = 3, criterion: str = "gini",
             min_samples_leaf: int = 5) -> TreeModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if criterion not in ("gini", "mse"):
        raise ValueError(f"unknown criterion {criterion!r}")
    if columns is None:
        columns = [f"x{i}" for i in range(X.shape[1])]

    def grow(rows: np.ndarray, depth: int) -> TreeNode:
        y_node = y[rows]
        node = TreeNode(_impurity(y_node, criterion), rows.size,
                        float(y_node.mean()))
        if depth >= max_depth or node.impurity == 0.0 or rows.size < 2 * min_samples_leaf:
            return node
        found = best_split(X[rows], y_node, criterion, min_samples_leaf)
        if found is None or found[0] >= node.impurity - 1e-15:
            return node
        _, feature, threshold = found
        mask = X[rows, feature] <= threshold
        node.feature = feature
        node.threshold = float(threshold)
        node.left = grow(rows[mask], depth + 1)
        node.right = grow(rows[~mask], depth + 1)
        return node

    root = grow(np.arange(X.shape[0]), 0)
    return TreeModel(columns, root, max_depth, criterion)
