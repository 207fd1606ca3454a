"""Dataset and split ingestion.

Dataset CSV schema: ``molecule_id,smiles,name,target`` (name optional).
Split files are ingested, never computed: either one JSON document with
``train``/``valid``/``test`` index arrays, or a directory holding
``train.txt``/``valid.txt``/``test.txt`` with one index per line.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .chem import parse_smiles
from .errors import IndexOutOfRange, MolConceptsError, SchemaError

log = logging.getLogger(__name__)

TASK_KINDS = ("regression", "classification")


@dataclass(frozen=True)
class DataRow:
    molecule_id: str
    smiles: str
    name: str | None
    target: float


@dataclass(frozen=True)
class Dataset:
    rows: tuple[DataRow, ...]
    task: str
    dropped_ids: tuple[str, ...] = ()

    def __len__(self):
        return len(self.rows)

    def targets(self, indices=None):
        import numpy as np
        if indices is None:
            return np.array([r.target for r in self.rows])
        return np.array([self.rows[i].target for i in indices])


@dataclass(frozen=True)
class SplitSlice:
    """Role-tagged index list; keeps train/valid/test slices type-distinguished."""
    role: str
    indices: tuple[int, ...]

    def __len__(self):
        return len(self.indices)


@dataclass
class DatasetSplit:
    train: SplitSlice
    valid: SplitSlice
    test: SplitSlice
    # Test-hygiene bookkeeping: the pipeline reads test targets exactly once
    # per iteration, through read_targets().
    test_target_reads: int = field(default=0, compare=False)

    def slices(self):
        return (self.train, self.valid, self.test)

    def read_targets(self, dataset: Dataset, split_slice: SplitSlice):
        if split_slice.role == "test":
            self.test_target_reads += 1
        return dataset.targets(split_slice.indices)


def load_dataset(path, task: str) -> Dataset:
    """Load and validate a dataset CSV; unparseable SMILES rows are dropped."""
    if task not in TASK_KINDS:
        raise SchemaError(f"unknown task kind {task!r}")
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"dataset file not found: {path}")
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        columns = reader.fieldnames or []
        for required in ("molecule_id", "smiles", "target"):
            if required not in columns:
                raise SchemaError(f"missing column {required!r} in {path}")
        raw_rows = list(reader)

    rows: list[DataRow] = []
    dropped: list[str] = []
    seen_ids: set[str] = set()
    for raw in raw_rows:
        molecule_id = raw["molecule_id"]
        if molecule_id in seen_ids:
            raise SchemaError(f"duplicate molecule_id {molecule_id!r}")
        seen_ids.add(molecule_id)
        try:
            parse_smiles(raw["smiles"])
        except MolConceptsError as exc:
            log.warning("dropping %s: unparseable SMILES (%s)", molecule_id, exc)
            dropped.append(molecule_id)
            continue
        try:
            target = float(raw["target"])
        except ValueError:
            raise SchemaError(
                f"non-numeric target for {molecule_id!r}: {raw['target']!r}")
        if task == "classification" and target not in (0.0, 1.0):
            raise SchemaError(
                f"classification target must be 0/1, got {target} for {molecule_id!r}")
        rows.append(DataRow(molecule_id, raw["smiles"], raw.get("name") or None,
                            target))
    return Dataset(tuple(rows), task, tuple(dropped))


def _validate_indices(name, raw, n_rows) -> tuple[int, ...]:
    indices = []
    for value in raw:
        idx = int(value)
        if idx < 0 or idx >= n_rows:
            raise IndexOutOfRange(
                f"{name} split index {idx} outside dataset of {n_rows} rows")
        indices.append(idx)
    if not indices:
        raise SchemaError(f"{name} split is empty")
    return tuple(indices)


def load_split(path, n_rows: int) -> DatasetSplit:
    """Load a split file (JSON with three arrays, or a directory of .txt lists)."""
    path = Path(path)
    if path.is_dir():
        parts = {}
        for role in ("train", "valid", "test"):
            role_file = path / f"{role}.txt"
            if not role_file.exists():
                raise SchemaError(f"missing split file {role_file}")
            parts[role] = [line for line in role_file.read_text().split()
                           if line.strip()]
    else:
        if not path.exists():
            raise SchemaError(f"split file not found: {path}")
        document = json.loads(path.read_text())
        if not all(key in document for key in ("train", "valid", "test")):
            raise SchemaError(f"split JSON needs train/valid/test keys: {path}")
        parts = {role: document[role] for role in ("train", "valid", "test")}

    slices = {role: _validate_indices(role, raw, n_rows)
              for role, raw in parts.items()}
    all_indices: list[int] = []
    for indices in slices.values():
        all_indices.extend(indices)
    if len(set(all_indices)) != len(all_indices):
        raise SchemaError("split slices overlap")
    return DatasetSplit(
        train=SplitSlice("train", slices["train"]),
        valid=SplitSlice("valid", slices["valid"]),
        test=SplitSlice("test", slices["test"]),
    )
