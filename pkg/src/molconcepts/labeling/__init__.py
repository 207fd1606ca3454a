"""Concept labeling: strategy routing, units, imputation, the LabelTable."""

from .engine import build_label_table
from .sandbox_client import SandboxRunner, graph_to_json
from .table import Column, LabelTable, impute_column, missing_rate
from .units import RawLabel, UNKNOWN, UnitDictionary, canonical_unit, convert

__all__ = [
    "build_label_table", "SandboxRunner", "graph_to_json",
    "Column", "LabelTable", "impute_column", "missing_rate",
    "RawLabel", "UNKNOWN", "UnitDictionary", "canonical_unit", "convert",
]
