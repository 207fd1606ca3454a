"""SMILES parsing and molecular descriptors."""

from .descriptors import (
    DescriptorSpec,
    DESCRIPTOR_IDS,
    catalog_as_json,
    compute_all,
    compute_descriptor,
    descriptor_by_id,
    descriptor_catalog,
)
from .smiles import Atom, Bond, MoleculeGraph, parse_smiles

__all__ = [
    "Atom",
    "Bond",
    "MoleculeGraph",
    "parse_smiles",
    "DescriptorSpec",
    "DESCRIPTOR_IDS",
    "descriptor_catalog",
    "descriptor_by_id",
    "compute_descriptor",
    "compute_all",
    "catalog_as_json",
]
