"""Golden descriptor fixture generator.

Reads a name,smiles CSV and emits one row per molecule with every
descriptor column.  Prefers RDKit when it is importable; otherwise falls
back to the bundled refchem toolkit.  The backend name and version are
recorded in the output header so regeneration is reproducible
byte-for-byte against a pinned backend.

Run offline at fixture-authoring time:

    molsandbox-fixtures data/fixtures/fixture_molecules.csv \
        -o data/fixtures/descriptor_golden.csv
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import refchem

INT_COLUMNS = {
    "heavy_atom_count", "num_h_bond_donors", "num_h_bond_acceptors",
    "num_rotatable_bonds", "num_rings", "num_aromatic_rings",
    "formal_charge_total", "num_chiral_centers", "num_carbon_atoms",
    "num_nitrogen_atoms", "num_oxygen_atoms", "num_sulfur_atoms",
    "num_fluorine_atoms", "num_chlorine_atoms", "num_bromine_atoms",
    "num_iodine_atoms", "num_hydrogen_atoms",
}


def _rdkit_backend():
    from rdkit import Chem
    from rdkit.Chem import Crippen, Descriptors, Lipinski, rdMolDescriptors

    def compute(smiles):
        mol = Chem.MolFromSmiles(smiles)
        if mol is None:
            raise ValueError("rdkit could not parse")
        return {
            "molecular_weight": Descriptors.MolWt(mol),
            "heavy_atom_count": mol.GetNumHeavyAtoms(),
            "num_h_bond_donors": Lipinski.NumHDonors(mol),
            "num_h_bond_acceptors": Lipinski.NumHAcceptors(mol),
            "tpsa": rdMolDescriptors.CalcTPSA(mol, includeSandP=True),
            "num_rotatable_bonds": Lipinski.NumRotatableBonds(mol),
            "num_rings": rdMolDescriptors.CalcNumRings(mol),
            "num_aromatic_rings": rdMolDescriptors.CalcNumAromaticRings(mol),
            "logp": Crippen.MolLogP(mol),
            "formal_charge_total": Chem.GetFormalCharge(mol),
            "num_chiral_centers": sum(
                1 for atom in mol.GetAtoms()
                if atom.GetChiralTag() != Chem.ChiralType.CHI_UNSPECIFIED),
            "num_carbon_atoms": _count(mol, 6),
            "num_nitrogen_atoms": _count(mol, 7),
            "num_oxygen_atoms": _count(mol, 8),
            "num_sulfur_atoms": _count(mol, 16),
            "num_fluorine_atoms": _count(mol, 9),
            "num_chlorine_atoms": _count(mol, 17),
            "num_bromine_atoms": _count(mol, 35),
            "num_iodine_atoms": _count(mol, 53),
            "num_hydrogen_atoms": sum(
                a.GetTotalNumHs(includeNeighbors=True)
                for a in mol.GetAtoms() if a.GetAtomicNum() != 1),
        }

    def _count(mol, z):
        return sum(1 for a in mol.GetAtoms() if a.GetAtomicNum() == z)

    import rdkit
    return compute, "rdkit", rdkit.__version__


def _refchem_backend():
    def compute(smiles):
        return refchem.all_descriptors(refchem.molecule(smiles))
    return compute, refchem.TOOLKIT_NAME, refchem.TOOLKIT_VERSION


def pick_backend(prefer: str = "auto"):
    if prefer in ("auto", "rdkit"):
        try:
            return _rdkit_backend()
        except ImportError:
            if prefer == "rdkit":
                raise
    return _refchem_backend()


def generate(input_path: str, output_path: str, prefer: str = "auto") -> int:
    """Write the golden CSV; returns the number of emitted rows."""
    compute, backend, version = pick_backend(prefer)
    with open(input_path, newline="") as handle:
        molecules = list(csv.DictReader(handle))

    written = 0
    with open(output_path, "w", newline="") as out:
        out.write(f"# generated-by: {backend} {version}\n")
        columns = ["name", "smiles", *refchem.DESCRIPTOR_ORDER]
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in molecules:
            try:
                values = compute(row["smiles"])
            except Exception as exc:  # log and skip, per-row failures allowed
                print(f"skip {row['name']}: {exc}", file=sys.stderr)
                continue
            rendered = [row["name"], row["smiles"]]
            for key in refchem.DESCRIPTOR_ORDER:
                value = values[key]
                if key in INT_COLUMNS:
                    rendered.append(str(int(round(value))))
                else:
                    rendered.append(format(value, ".6f"))
            writer.writerow(rendered)
            written += 1
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="CSV with name,smiles columns")
    parser.add_argument("-o", "--output", required=True)
    parser.add_argument("--backend", choices=["auto", "rdkit", "refchem"],
                        default="auto")
    args = parser.parse_args(argv)
    count = generate(args.input, args.output, args.backend)
    print(f"wrote {count} fixture rows to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
