#!/usr/bin/env python3
"""Fetch the real public benchmark datasets and their scaffold splits.

Needs network access.  Downloads the graph-benchmark CSV bundles (which
carry both the molecule tables and the scaffold split indices), converts
them to this package's dataset schema, and writes:

    data/freesolv.csv, data/splits/freesolv_ogb.json
    data/esol.csv,     data/splits/esol_ogb.json
    data/bbbp.csv,     data/splits/bbbp_ogb.json

Rows whose SMILES this package cannot parse are dropped and the split
indices are remapped so they stay aligned with the emitted CSV.
"""

import csv
import gzip
import io
import json
import sys
import zipfile
from pathlib import Path

import requests

from molconcepts.chem import parse_smiles
from molconcepts.errors import MolConceptsError

ROOT = Path(__file__).resolve().parents[1]
BASE_URL = "http://snap.stanford.edu/ogb/data/graphproppred/csv_mol_download"

DATASETS = {
    # name -> (zip name, task)
    "freesolv": ("freesolv", "regression"),
    "esol": ("esol", "regression"),
    "bbbp": ("bbbp", "classification"),
}


def _read_member(bundle: zipfile.ZipFile, suffix: str):
    for name in bundle.namelist():
        if name.endswith(suffix):
            with bundle.open(name) as handle:
                return gzip.decompress(handle.read()).decode()
    raise FileNotFoundError(f"no member ending with {suffix}")


def fetch(name: str, task: str) -> None:
    url = f"{BASE_URL}/{name}.zip"
    print(f"downloading {url} ...")
    response = requests.get(url, timeout=300)
    response.raise_for_status()
    bundle = zipfile.ZipFile(io.BytesIO(response.content))

    molecules = list(csv.DictReader(io.StringIO(
        _read_member(bundle, "mapping/mol.csv.gz"))))
    smiles_key = "smiles"
    target_key = next(k for k in molecules[0] if k not in (smiles_key, "mol_id"))

    splits = {}
    for role, member in (("train", "train.csv.gz"), ("valid", "valid.csv.gz"),
                         ("test", "test.csv.gz")):
        text = _read_member(bundle, f"split/scaffold/{member}")
        splits[role] = [int(line) for line in text.split() if line.strip()]

    # Drop rows our parser rejects and remap the split indices accordingly.
    keep, new_index = [], {}
    for old_index, row in enumerate(molecules):
        try:
            parse_smiles(row[smiles_key])
        except MolConceptsError as exc:
            print(f"  dropping row {old_index} ({exc})", file=sys.stderr)
            continue
        new_index[old_index] = len(keep)
        keep.append(row)

    out_csv = ROOT / "data" / f"{name}.csv"
    with out_csv.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["molecule_id", "smiles", "name", "target"])
        for i, row in enumerate(keep):
            target = float(row[target_key])
            if task == "classification":
                target = int(target)
            writer.writerow([f"{name}{i:04d}", row[smiles_key], "", target])

    remapped = {role: [new_index[i] for i in indices if i in new_index]
                for role, indices in splits.items()}
    out_split = ROOT / "data" / "splits" / f"{name}_ogb.json"
    out_split.write_text(json.dumps(remapped, indent=2, sort_keys=True) + "\n")
    print(f"  wrote {out_csv} ({len(keep)} rows) and {out_split}")


def main() -> int:
    for name, (zip_name, task) in DATASETS.items():
        fetch(zip_name, task)
    return 0


if __name__ == "__main__":
    sys.exit(main())
