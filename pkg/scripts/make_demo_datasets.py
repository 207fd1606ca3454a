#!/usr/bin/env python3
"""Build the committed demo datasets and split files.

The molecules are real structures from the fixture list; the regression
and classification targets are SYNTHETIC, generated from the documented
formulas below over tool-computed descriptors plus seeded noise.  They
exist so the full pipeline can run offline and deterministically; they do
not reproduce any published measurement.  See data/README.md.

Formulas (raw descriptor space, noise ~ N(0, sigma), fixed seeds):
  freesolv_demo: y = 1.2 - 0.012*TPSA - 0.65*HBD + 0.35*RotB - 0.006*MW
  esol_demo:     y = 0.25 - 0.95*logP - 0.0062*MW + 0.15*RotB - 0.55*AromRings
  bbbp_demo:     P(y=1) = sigmoid(1.6*z(logP) - 1.2*z(HBA) - 0.9*z(TPSA) + 0.3)
"""

import csv
import json
from pathlib import Path

import numpy as np

from molconcepts.chem import compute_all, parse_smiles

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "data" / "fixtures" / "fixture_molecules.csv"


def load_molecules():
    with FIXTURES.open() as handle:
        rows = list(csv.DictReader(handle))
    keep = []
    for row in rows:
        if "." in row["smiles"]:
            continue  # demo sets stay single-fragment
        descriptors = compute_all(parse_smiles(row["smiles"]))
        keep.append((row["name"], row["smiles"], descriptors))
    return keep


def write_dataset(path, rows):
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["molecule_id", "smiles", "name", "target"])
        for i, (name, smiles, target) in enumerate(rows):
            writer.writerow([f"mol{i:03d}", smiles, name, f"{target:.4f}"])


def write_split(path, n, train=0.6, valid=0.2):
    n_train = int(round(n * train))
    n_valid = int(round(n * valid))
    split = {
        "train": list(range(0, n_train)),
        "valid": list(range(n_train, n_train + n_valid)),
        "test": list(range(n_train + n_valid, n)),
    }
    path.write_text(json.dumps(split, indent=2, sort_keys=True) + "\n")


def scaffoldish_order(molecules):
    """Order by ring structure so the tail of the list is structurally
    distinct from the head (scaffold-split flavour for the demo)."""
    return sorted(
        molecules,
        key=lambda m: (m[2]["num_aromatic_rings"], m[2]["num_rings"],
                       m[2]["heavy_atom_count"], m[0]))


def spread(molecules, count):
    """Every-kth sample over the scaffold ordering: keeps the demo pool
    chemically diverse while staying deterministic."""
    ordered = scaffoldish_order(molecules)
    step = max(1, len(ordered) // count)
    picked = ordered[::step][:count]
    return scaffoldish_order(picked)


def main():
    molecules = load_molecules()
    data_dir = ROOT / "data"
    split_dir = data_dir / "splits"
    split_dir.mkdir(exist_ok=True)

    # --- freesolv_demo: hydration-free-energy-flavoured regression --------
    rng = np.random.default_rng(7)
    pool = spread(molecules, 80)
    rows = []
    for name, smiles, d in pool:
        y = (1.2
             - 0.012 * d["tpsa"]
             - 0.65 * d["num_h_bond_donors"]
             + 0.35 * d["num_rotatable_bonds"]
             - 0.006 * d["molecular_weight"]
             + rng.normal(0.0, 0.25))
        rows.append((name, smiles, y))
    write_dataset(data_dir / "freesolv_demo.csv", rows)
    write_split(split_dir / "freesolv_demo.json", len(rows))

    # --- esol_demo: solubility-flavoured regression -----------------------
    rng = np.random.default_rng(11)
    special = [m for m in molecules if m[0] in ("diphenylamine", "rti-17")]
    others = [m for m in molecules if m[0] not in ("diphenylamine", "rti-17")]
    chosen = scaffoldish_order(special + spread(others, 78))
    rows = []
    for name, smiles, d in chosen:
        y = (0.25
             - 0.95 * d["logp"]
             - 0.0062 * d["molecular_weight"]
             + 0.15 * d["num_rotatable_bonds"]
             - 0.55 * d["num_aromatic_rings"]
             + rng.normal(0.0, 0.30))
        rows.append((name, smiles, y))
    write_dataset(data_dir / "esol_demo.csv", rows)
    write_split(split_dir / "esol_demo.json", len(rows))

    # --- bbbp_demo: barrier-penetration-flavoured classification ----------
    rng = np.random.default_rng(13)
    pool = spread(molecules, 100)
    logp = np.array([m[2]["logp"] for m in pool])
    hba = np.array([m[2]["num_h_bond_acceptors"] for m in pool])
    tpsa = np.array([m[2]["tpsa"] for m in pool])

    def z(v):
        return (v - v.mean()) / v.std()

    logits = 1.6 * z(logp) - 1.2 * z(hba) - 0.9 * z(tpsa) + 0.3
    probs = 1.0 / (1.0 + np.exp(-logits))
    labels = (rng.random(len(pool)) < probs).astype(int)
    rows = [(name, smiles, float(label))
            for (name, smiles, _), label in zip(pool, labels)]
    write_dataset(data_dir / "bbbp_demo.csv", rows)
    write_split(split_dir / "bbbp_demo.json", len(rows))

    print(f"freesolv_demo: {sum(1 for _ in open(data_dir / 'freesolv_demo.csv')) - 1} rows")
    print(f"esol_demo:     {sum(1 for _ in open(data_dir / 'esol_demo.csv')) - 1} rows")
    print(f"bbbp_demo:     {sum(1 for _ in open(data_dir / 'bbbp_demo.csv')) - 1} rows")


if __name__ == "__main__":
    main()
