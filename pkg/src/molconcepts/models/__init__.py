"""Explainable predictors over the concept table."""

import json

from .base import FittedModel, Standardization, intervene
from .linear import LinearModel, fit_linear, residual_sum_of_squares
from .logistic import LogisticModel, fit_logistic, log_likelihood
from .mlp import MlpModel, fit_mlp, init_parameters, loss_and_gradients
from .tree import TreeModel, TreeNode, best_split, fit_tree

_VARIANTS = {
    "linear": LinearModel,
    "logistic": LogisticModel,
    "tree": TreeModel,
    "mlp": MlpModel,
}


def model_from_dict(data: dict) -> FittedModel:
    return _VARIANTS[data["variant"]].from_dict(data)


def save_model(model: FittedModel, path) -> None:
    with open(path, "w") as handle:
        json.dump(model.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_model(path) -> FittedModel:
    with open(path) as handle:
        return model_from_dict(json.load(handle))


__all__ = [
    "FittedModel", "Standardization", "intervene",
    "LinearModel", "fit_linear", "residual_sum_of_squares",
    "LogisticModel", "fit_logistic", "log_likelihood",
    "TreeModel", "TreeNode", "fit_tree", "best_split",
    "MlpModel", "fit_mlp", "init_parameters", "loss_and_gradients",
    "model_from_dict", "save_model", "load_model",
]
