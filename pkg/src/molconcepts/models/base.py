"""Shared predictor machinery: standardization, base model, intervention."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SchemaMismatch

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Standardization:
    means: tuple[float, ...]
    stds: tuple[float, ...]
    zero_variance: tuple[int, ...]

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardization":
        X = np.asarray(X, dtype=float)
        means = X.mean(axis=0)
        stds = X.std(axis=0)
        zero = tuple(int(i) for i in np.flatnonzero(stds < 1e-12))
        safe = stds.copy()
        safe[list(zero)] = 1.0
        return cls(tuple(means), tuple(safe), zero)

    @classmethod
    def identity(cls, n_columns: int) -> "Standardization":
        return cls((0.0,) * n_columns, (1.0,) * n_columns, ())

    def transform(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return (X - np.asarray(self.means)) / np.asarray(self.stds)

    def to_dict(self):
        return {"means": list(self.means), "stds": list(self.stds),
                "zero_variance": list(self.zero_variance)}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(data["means"]), tuple(data["stds"]),
                   tuple(data["zero_variance"]))


class FittedModel:
    """Base for the four predictor variants."""

    variant: str = "?"

    def __init__(self, columns, standardization: Standardization):
        self.columns = tuple(columns)
        self.standardization = standardization

    # -- prediction --------------------------------------------------------
    def _check_rows(self, rows) -> np.ndarray:
        X = np.asarray(rows, dtype=float)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.shape[1] != len(self.columns):
            raise SchemaMismatch(
                f"{self.variant} model expects {len(self.columns)} columns, "
                f"got {X.shape[1]}")
        return X

    def predict(self, rows) -> np.ndarray:
        X = self._check_rows(rows)
        return self._forward(self.standardization.transform(X))

    def _forward(self, Z: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "variant": self.variant,
            "columns": list(self.columns),
            "standardization": self.standardization.to_dict(),
            **self._payload(),
        }

    def _payload(self) -> dict:  # pragma: no cover
        raise NotImplementedError


def intervene(model: FittedModel, base_row, concept: str, grid):
    """Re-predict with one concept set to each grid value, all else fixed."""
    if concept not in model.columns:
        raise SchemaMismatch(f"concept {concept!r} not among model columns")
    if len(list(grid)) == 0:
        raise SchemaMismatch("empty intervention grid")
    base = np.asarray(base_row, dtype=float).reshape(-1)
    if base.shape[0] != len(model.columns):
        raise SchemaMismatch(
            f"base row has {base.shape[0]} values, model expects "
            f"{len(model.columns)}")
    position = model.columns.index(concept)
    results = []
    for value in grid:
        row = base.copy()
        row[position] = value
        prediction = model.predict(row.reshape(1, -1))
        results.append((float(value), float(np.asarray(prediction).reshape(-1)[0])))
    return results
