"""Fit explainable predictors on tool descriptors and select concepts."""

import csv
from pathlib import Path

import numpy as np

from molconcepts.chem import compute_descriptor, parse_smiles
from molconcepts.metrics import rmse
from molconcepts.models import fit_linear, fit_tree
from molconcepts.selection import aic_stepwise

ROOT = Path(__file__).resolve().parents[1]
DESCRIPTORS = ["molecular_weight", "tpsa", "num_h_bond_donors",
               "num_rotatable_bonds", "num_rings", "logp"]

rows = list(csv.DictReader((ROOT / "data" / "freesolv_demo.csv").open()))
X = np.array([[compute_descriptor(parse_smiles(r["smiles"]), d)
               for d in DESCRIPTORS] for r in rows])
y = np.array([float(r["target"]) for r in rows])

selection = aic_stepwise(X, y, columns=DESCRIPTORS, direction="both")
print("AIC stepwise kept:", list(selection.kept))
for name, reason in selection.dropped.items():
    print(f"  dropped {name}: {reason}")

kept = [DESCRIPTORS.index(c) for c in selection.kept]
linear = fit_linear(X[:, kept], y, columns=list(selection.kept))
print("\nstandardized coefficients:")
for name, coefficient in sorted(zip(linear.columns, linear.coefficients),
                                key=lambda item: -abs(item[1])):
    print(f"  {name:22s} {coefficient:+.3f}")
print(f"train rmse: {rmse(y, linear.predict(X[:, kept])):.3f}")

tree = fit_tree(X[:, kept], y, columns=list(selection.kept), max_depth=2,
                criterion="mse")
root = tree.root
print(f"\ntree root split: {tree.columns[root.feature]} <= {root.threshold:.2f}"
      f" (impurity {root.impurity:.3f}, n={root.n_samples})")
