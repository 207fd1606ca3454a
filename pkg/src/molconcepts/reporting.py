"""Explanation reports: coefficient tables, tree dumps, intervention sweeps.

Everything is emitted as plot-ready CSV/JSON; no images.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import VariantMismatch
from .models import FittedModel, LinearModel, LogisticModel, TreeModel, intervene


def write_coefficients_csv(model: FittedModel, path) -> None:
    """``concept,coefficient`` sorted by |coefficient| descending.

    Coefficients are reported in standardized space; ties keep column order.
    """
    if not isinstance(model, (LinearModel, LogisticModel)):
        raise VariantMismatch(
            f"coefficient table needs a linear/logistic model, got {model.variant}")
    order = sorted(range(len(model.columns)),
                   key=lambda i: (-abs(model.coefficients[i]), i))
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["concept", "coefficient"])
        for i in order:
            writer.writerow([model.columns[i], repr(float(model.coefficients[i]))])


def write_tree_json(model: FittedModel, path) -> None:
    """Full dump: split feature, threshold, impurity, samples per node."""
    if not isinstance(model, TreeModel):
        raise VariantMismatch(f"tree dump needs a tree model, got {model.variant}")
    with open(path, "w", encoding="utf-8") as handle:
        json.dump({"max_depth": model.max_depth, "criterion": model.criterion,
                   "tree": model.root.to_dict(list(model.columns))},
                  handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_intervention_csv(model: FittedModel, base_row, concept: str,
                           grid, path) -> None:
    results = intervene(model, base_row, concept, list(grid))
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([concept, "prediction"])
        for value, prediction in results:
            writer.writerow([repr(value), repr(prediction)])


def parse_grid_spec(spec: str) -> list[float]:
    """``start:stop:count`` -> evenly spaced grid; a single float works too."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid spec must be start:stop:count, got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    if count == 1:
        return [start]
    return [float(v) for v in np.linspace(start, stop, count)]


def label_quality(table, smiles_by_id: dict | None = None,
                  truth_csv=None) -> dict:
    """Label-quality check: correlate direct/func columns with ground truth.

    Tool-computable concepts use the descriptor engine as truth (needs
    ``smiles_by_id``: molecule_id -> SMILES); other concepts can be checked
    against an optional CSV of looked-up values (``molecule_id,concept,
    value`` rows).  Returns per-column Pearson r and the fraction of
    columns with r >= 0.7.
    """
    import csv as _csv

    from .chem import compute_descriptor, descriptor_catalog, parse_smiles
    from .errors import ConstantVector
    from .metrics import fraction_high_correlation, pearson_r

    match_keys = {}
    for spec in descriptor_catalog():
        for key in spec.match_keys:
            match_keys[key] = spec.id

    lookup = {}
    if truth_csv is not None:
        with open(truth_csv, newline="", encoding="utf-8") as handle:
            for row in _csv.DictReader(handle):
                lookup[(row["molecule_id"], row["concept"].lower())] = \
                    float(row["value"])

    correlations = {}
    for column in table.columns:
        if column.route == "tool":
            continue  # tools are the truth, not the subject
        descriptor_id = match_keys.get(column.concept.lower())
        truth, observed = [], []
        for molecule_id, value in zip(table.molecule_ids, column.values):
            if not isinstance(value, (int, float)):
                continue
            if descriptor_id is not None and smiles_by_id:
                truth.append(compute_descriptor(
                    parse_smiles(smiles_by_id[molecule_id]), descriptor_id))
            elif (molecule_id, column.concept.lower()) in lookup:
                truth.append(lookup[(molecule_id, column.concept.lower())])
            else:
                continue
            observed.append(float(value))
        if len(observed) >= 2:
            try:
                correlations[column.name] = pearson_r(observed, truth)
            except ConstantVector:
                continue
    return {
        "r": correlations,
        "fraction_high": fraction_high_correlation(correlations.values()),
    }


def explain_report(model: FittedModel, out_dir, selection=None,
                   intervention: dict | None = None) -> list[str]:
    """Emit every applicable report for the model variant.

    ``intervention`` (optional): {"base_row", "concept", "grid"}.
    Returns the written file names.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if isinstance(model, (LinearModel, LogisticModel)):
        write_coefficients_csv(model, out_dir / "coefficients.csv")
        written.append("coefficients.csv")
    if isinstance(model, TreeModel):
        write_tree_json(model, out_dir / "tree.json")
        written.append("tree.json")
    if selection is not None:
        with open(out_dir / "selection.json", "w", encoding="utf-8") as handle:
            json.dump(selection.to_dict(), handle, indent=2, sort_keys=True)
            handle.write("\n")
        written.append("selection.json")
    if intervention is not None:
        write_intervention_csv(model, intervention["base_row"],
                               intervention["concept"], intervention["grid"],
                               out_dir / "intervention.csv")
        written.append("intervention.csv")
    return written
