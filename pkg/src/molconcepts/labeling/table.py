"""The molecules-by-concepts label table and its file formats.

CSV header: ``molecule_id,<concept> [<route>] (<unit>),...``; Missing
cells are empty.  Per-cell provenance lives in a sidecar JSON file.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import AllMissing

ROUTE_TAGS = {"tool": "tool", "direct": "direct", "generated_function": "func"}


@dataclass
class Column:
    concept: str
    route: str            # tool | direct | func
    unit: str
    values: list          # float | str | None (None = Missing)
    provenance: list      # str | None per cell
    tool_id: str | None = None  # descriptor id when route == "tool" 

    @property
    def name(self) -> str:
        return f"{self.concept} [{self.route}]"

    @property
    def header(self) -> str:
        return f"{self.name} ({self.unit})"

    def missing_mask(self):
        return [v is None for v in self.values]


def missing_rate(column: Column) -> float:
    if not column.values:
        return 0.0
    return sum(1 for v in column.values if v is None) / len(column.values)


def impute_column(column: Column, policy) -> Column:
    """Fill Missing cells; policy is "mean" or ("constant", value).

    Non-missing cells are untouched and imputation is idempotent.
    """
    if isinstance(policy, str) and policy == "mean":
        observed = [v for v in column.values if isinstance(v, (int, float))]
        if not observed:
            raise AllMissing(f"column {column.name!r} has no observed values")
        fill = float(np.mean(observed))
        tag = "imputed(mean)"
    elif isinstance(policy, (tuple, list)) and policy[0] == "constant":
        fill = float(policy[1])
        tag = f"imputed(constant={policy[1]:g})"
    else:
        raise ValueError(f"unknown imputation policy {policy!r}")
    values = list(column.values)
    provenance = list(column.provenance)
    for i, value in enumerate(values):
        if value is None:
            values[i] = fill
            provenance[i] = tag
    return Column(column.concept, column.route, column.unit, values, provenance)


@dataclass
class LabelTable:
    molecule_ids: tuple[str, ...]
    columns: list[Column] = field(default_factory=list)
    dropped_concepts: list[str] = field(default_factory=list)

    def __post_init__(self):
        for column in self.columns:
            if len(column.values) != len(self.molecule_ids):
                raise ValueError(f"column {column.name!r} is not rectangular")

    def add_column(self, column: Column) -> None:
        if len(column.values) != len(self.molecule_ids):
            raise ValueError(f"column {column.name!r} is not rectangular")
        self.columns.append(column)

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def has_missing(self) -> bool:
        return any(any(v is None for v in c.values) for c in self.columns)

    def imputed(self, policies: dict[str, object] | None = None) -> "LabelTable":
        """New table with every Missing cell filled (default policy: mean).

        A column with no observed value at all cannot be mean-imputed; it
        is dropped with a warning instead of failing the whole table.
        """
        import logging

        policies = policies or {}
        new_columns = []
        dropped = list(self.dropped_concepts)
        for column in self.columns:
            policy = policies.get(column.concept, policies.get(column.name, "mean"))
            if any(v is None for v in column.values):
                try:
                    filled = impute_column(column, policy)
                except AllMissing:
                    logging.getLogger(__name__).warning(
                        "dropping column %r: every cell is Missing", column.name)
                    dropped.append(f"{column.name} (all cells missing)")
                    continue
                filled.tool_id = column.tool_id
                new_columns.append(filled)
            else:
                new_columns.append(column)
        return LabelTable(self.molecule_ids, new_columns, dropped)

    def matrix(self, names: list[str] | None = None) -> np.ndarray:
        names = names or self.column_names()
        data = []
        for name in names:
            column = self.column(name)
            if any(v is None for v in column.values):
                raise ValueError(f"column {name!r} still has Missing cells")
            data.append([float(v) for v in column.values])
        return np.array(data).T if data else np.empty((len(self.molecule_ids), 0))

    def row(self, molecule_id: str, names: list[str] | None = None) -> np.ndarray:
        index = self.molecule_ids.index(molecule_id)
        names = names or self.column_names()
        return np.array([float(self.column(n).values[index]) for n in names])

    # -- persistence ---------------------------------------------------------
    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["molecule_id", *[c.header for c in self.columns]])
            for i, molecule_id in enumerate(self.molecule_ids):
                row = [molecule_id]
                for column in self.columns:
                    value = column.values[i]
                    if value is None:
                        row.append("")
                    elif isinstance(value, float):
                        row.append(repr(value))
                    else:
                        row.append(str(value))
                writer.writerow(row)

    def provenance_json(self, path) -> None:
        document = {
            "dropped_concepts": sorted(self.dropped_concepts),
            "columns": [
                {"name": c.name, "concept": c.concept, "route": c.route,
                 "unit": c.unit, "tool_id": c.tool_id,
                 "provenance": c.provenance}
                for c in self.columns
            ],
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=2, sort_keys=True,
                      ensure_ascii=False)
            handle.write("\n")

    @classmethod
    def from_csv(cls, csv_path, provenance_path=None) -> "LabelTable":
        with open(csv_path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            rows = list(reader)
        provenance = None
        if provenance_path is not None:
            with open(provenance_path, encoding="utf-8") as handle:
                provenance = json.load(handle)
        molecule_ids = tuple(r[0] for r in rows)
        columns = []
        pattern = re.compile(r"^(?P<concept>.+) \[(?P<route>\w+)\] \((?P<unit>.*)\)$")
        for j, head in enumerate(header[1:], start=1):
            match = pattern.match(head)
            if not match:
                raise ValueError(f"unparseable column header {head!r}")
            values = []
            for row in rows:
                cell = row[j]
                if cell == "":
                    values.append(None)
                else:
                    try:
                        values.append(float(cell))
                    except ValueError:
                        values.append(cell)
            tags = [None] * len(rows)
            tool_id = None
            if provenance is not None:
                for col in provenance["columns"]:
                    if col["name"] == f"{match['concept']} [{match['route']}]":
                        tags = col["provenance"]
                        tool_id = col.get("tool_id")
            columns.append(Column(match["concept"], match["route"],
                                  match["unit"], values, tags, tool_id))
        dropped = provenance.get("dropped_concepts", []) if provenance else []
        return cls(molecule_ids, columns, list(dropped))
