"""What-if intervention: sweep one concept for one molecule and re-predict.

Replays the solubility demo run, takes its MLP, and slides diphenylamine's
lipophilicity over a grid while every other concept stays fixed.
"""

import csv
import json
from pathlib import Path

import numpy as np

from molconcepts.labeling import LabelTable
from molconcepts.models import intervene, load_model
from molconcepts.pipeline import RunConfig, run_pipeline

ROOT = Path(__file__).resolve().parents[1]

data = json.loads((ROOT / "configs" / "esol_demo.json").read_text())
for key in ("dataset", "split", "transcripts"):
    data[key] = str(ROOT / data[key])
data["run_dir"] = str(ROOT / "runs" / "esol_demo")
run_pipeline(RunConfig.from_dict(data))

run_dir = Path(data["run_dir"])
mlp = load_model(run_dir / "iteration_01" / "models" / "mlp.json")
table = LabelTable.from_csv(run_dir / "iteration_01" / "label_table.csv")

ids = {r["name"]: r["molecule_id"]
       for r in csv.DictReader((ROOT / "data" / "esol_demo.csv").open())}
base = table.row(ids["diphenylamine"], list(mlp.columns))
position = list(mlp.columns).index("logP [tool]")
print(f"diphenylamine logP: {base[position]:.3f}")

lo, hi = base[position] - 1.0, base[position] + 1.0
sweep = intervene(mlp, base, "logP [tool]", np.linspace(lo, hi, 9))
print("\nlogP -> predicted solubility")
for value, prediction in sweep:
    print(f"  {value:6.3f} -> {prediction:7.3f}")
