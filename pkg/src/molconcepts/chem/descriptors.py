"""Quantitative molecular descriptors over MoleculeGraph.

Implements the closed descriptor catalog used for tool-route concept
labeling: counting descriptors, Ertl-style fragment TPSA, and
Wildman-Crippen atom-contribution logP.  All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import UnsupportedDescriptor
from .smiles import MoleculeGraph
from .tables import ATOMIC_WEIGHTS, CRIPPEN_CONTRIBUTIONS, TPSA_FRAGMENTS

HETERO_FOR_C = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}
METALS = {
    "Li", "Na", "K", "Rb", "Cs", "Be", "Mg", "Ca", "Sr", "Ba", "Al",
    "Zn", "Fe", "Cu", "Mn", "Cr", "Ni", "Co", "Ag", "Cd", "Hg", "Pb",
    "Sn", "Bi", "Ti", "V", "Mo", "Zr", "Ru", "Rh", "Pd", "Pt", "Au",
    "Ga", "Ge", "In", "Tl",
}


# --- graph helpers --------------------------------------------------------

def total_hydrogens(mol: MoleculeGraph, idx: int) -> int:
    """Implicit H plus explicit [H] neighbour atoms."""
    count = mol.atoms[idx].implicit_h
    for j, _ in mol.neighbors(idx):
        if mol.atoms[j].atomic_number == 1:
            count += 1
    return count


def heavy_neighbors(mol: MoleculeGraph, idx: int):
    return [(j, bond) for j, bond in mol.neighbors(idx)
            if mol.atoms[j].atomic_number > 1]


def _has_double_to_oxygen(mol: MoleculeGraph, idx: int) -> bool:
    return any(
        bond.order == 2 and not bond.aromatic and mol.atoms[j].symbol == "O"
        for j, bond in mol.neighbors(idx)
    )


def _in_three_ring(mol: MoleculeGraph, idx: int) -> bool:
    return any(len(ring) == 3 and idx in ring for ring in mol.rings)


# --- counting descriptors -------------------------------------------------

def molecular_weight(mol: MoleculeGraph) -> float:
    weight = 0.0
    h_weight = ATOMIC_WEIGHTS["H"]
    for idx, atom in enumerate(mol.atoms):
        weight += ATOMIC_WEIGHTS[atom.symbol]
        weight += atom.implicit_h * h_weight
    return weight


def heavy_atom_count(mol: MoleculeGraph) -> int:
    return sum(1 for atom in mol.atoms if atom.atomic_number > 1)


def atom_count(mol: MoleculeGraph, symbol: str) -> int:
    if symbol == "H":
        explicit = sum(1 for atom in mol.atoms if atom.atomic_number == 1)
        implicit = sum(atom.implicit_h for atom in mol.atoms)
        return explicit + implicit
    return sum(1 for atom in mol.atoms if atom.symbol == symbol)


def h_bond_donors(mol: MoleculeGraph) -> int:
    return sum(
        1 for idx, atom in enumerate(mol.atoms)
        if atom.symbol in ("N", "O") and total_hydrogens(mol, idx) >= 1
    )


def h_bond_acceptors(mol: MoleculeGraph) -> int:
    """N/O acceptors minus pyrrole-type N, amide N and cationic atoms."""
    count = 0
    for idx, atom in enumerate(mol.atoms):
        if atom.symbol not in ("N", "O"):
            continue
        if atom.formal_charge > 0:
            continue
        if atom.symbol == "N":
            if atom.aromatic:
                # Pyrrole-type: the lone pair sits in the ring pi system.
                if total_hydrogens(mol, idx) >= 1 or len(heavy_neighbors(mol, idx)) == 3:
                    continue
            else:
                amide = any(
                    bond.order == 1 and not bond.aromatic
                    and mol.atoms[j].symbol == "C"
                    and _has_double_to_oxygen(mol, j)
                    for j, bond in mol.neighbors(idx)
                )
                if amide:
                    continue
        count += 1
    return count


def rotatable_bonds(mol: MoleculeGraph) -> int:
    """Non-ring single bonds between heavy atoms of degree >= 2, minus amide C-N."""
    count = 0
    for bond in mol.bonds:
        if bond.order != 1 or bond.aromatic:
            continue
        a, b = bond.a, bond.b
        atom_a, atom_b = mol.atoms[a], mol.atoms[b]
        if atom_a.atomic_number == 1 or atom_b.atomic_number == 1:
            continue
        if mol.ring_bond(a, b):
            continue
        if len(heavy_neighbors(mol, a)) < 2 or len(heavy_neighbors(mol, b)) < 2:
            continue
        pair = {atom_a.symbol, atom_b.symbol}
        if pair == {"C", "N"}:
            carbon = a if atom_a.symbol == "C" else b
            if _has_double_to_oxygen(mol, carbon):
                continue
        count += 1
    return count


def ring_count(mol: MoleculeGraph) -> int:
    return len(mol.rings)


def aromatic_ring_count(mol: MoleculeGraph) -> int:
    bond_lookup = {frozenset((b.a, b.b)): b for b in mol.bonds}
    count = 0
    for ring in mol.rings:
        if not all(mol.atoms[i].aromatic for i in ring):
            continue
        n = len(ring)
        ring_bonds = [bond_lookup.get(frozenset((ring[i], ring[(i + 1) % n])))
                      for i in range(n)]
        if all(b is not None and b.aromatic for b in ring_bonds):
            count += 1
    return count


def formal_charge_total(mol: MoleculeGraph) -> int:
    return sum(atom.formal_charge for atom in mol.atoms)


def chiral_center_count(mol: MoleculeGraph) -> int:
    return sum(1 for atom in mol.atoms if atom.chirality is not None)


# --- TPSA -----------------------------------------------------------------

_BOND_CHAR_ORDER = "-=#:"


def _tpsa_signature(mol: MoleculeGraph, idx: int) -> str:
    atom = mol.atoms[idx]
    symbol = atom.symbol.lower() if atom.aromatic else atom.symbol
    n_h = total_hydrogens(mol, idx)
    parts = [symbol]
    if n_h:
        parts.append(f"H{n_h}")
    if atom.formal_charge > 0:
        parts.append("+")
    elif atom.formal_charge < 0:
        parts.append("-")
    chars = []
    for j, bond in heavy_neighbors(mol, idx):
        if bond.aromatic:
            chars.append(":")
        else:
            chars.append({1: "-", 2: "=", 3: "#"}[bond.order])
    chars.sort(key=_BOND_CHAR_ORDER.index)
    signature = f"[{''.join(parts)}]{''.join(chars)}"
    if _in_three_ring(mol, idx) and len(mol.rings) > 0:
        with_ring = signature + "r3"
        if with_ring in TPSA_FRAGMENTS:
            return with_ring
    return signature


def tpsa(mol: MoleculeGraph) -> float:
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        if atom.symbol not in ("N", "O", "S", "P"):
            continue
        total += TPSA_FRAGMENTS.get(_tpsa_signature(mol, idx), 0.0)
    return total


# --- Wildman-Crippen logP ---------------------------------------------------

def _carbon_type(mol: MoleculeGraph, idx: int) -> str:
    atom = mol.atoms[idx]
    neigh = heavy_neighbors(mol, idx)
    n_h = total_hydrogens(mol, idx)
    if atom.aromatic:
        for j, bond in neigh:
            other = mol.atoms[j]
            if bond.aromatic or other.aromatic:
                continue
            if other.symbol not in HETERO_FOR_C and other.symbol != "C":
                return "C13"
        for j, bond in neigh:
            symbol = mol.atoms[j].symbol
            if symbol == "F":
                return "C14"
            if symbol == "Cl":
                return "C15"
            if symbol == "Br":
                return "C16"
            if symbol == "I":
                return "C17"
        if n_h >= 1:
            return "C18"
        if sum(1 for _, bond in neigh if bond.aromatic) == 3:
            return "C19"
        for j, bond in neigh:
            if bond.aromatic:
                continue
            other = mol.atoms[j]
            if bond.order == 1:
                if other.aromatic:
                    return "C20"
                if other.symbol == "C":
                    return "C21"
                if other.symbol == "N":
                    return "C22"
                if other.symbol == "O":
                    return "C23"
                if other.symbol == "S":
                    return "C24"
            if bond.order == 2 and other.symbol in ("C", "N", "O"):
                return "C25"
        return "CS"

    orders = [bond.order for _, bond in neigh]
    if 3 in orders or orders.count(2) == 2:
        return "C7"
    if 2 in orders:
        doubles = [mol.atoms[j] for j, bond in neigh if bond.order == 2]
        if any(d.symbol != "C" and not d.aromatic for d in doubles):
            return "C5"
        if any(mol.atoms[j].aromatic for j, _ in neigh):
            return "C26"
        return "C6"
    # sp3 carbon
    if all(mol.atoms[j].symbol == "C" and not mol.atoms[j].aromatic for j, _ in neigh):
        return "C1" if len(neigh) <= 2 else "C2"
    if any(not mol.atoms[j].aromatic and mol.atoms[j].symbol in HETERO_FOR_C
           for j, _ in neigh):
        return "C3" if n_h >= 2 else "C4"
    if any(mol.atoms[j].aromatic for j, _ in neigh):
        if n_h == 3:
            aromatic_c = any(
                mol.atoms[j].aromatic and mol.atoms[j].symbol == "C"
                for j, _ in neigh)
            return "C8" if aromatic_c else "C9"
        if n_h == 2:
            return "C10"
        if n_h == 1:
            return "C11"
        return "C12"
    if any(not mol.atoms[j].aromatic and mol.atoms[j].symbol != "C"
           for j, _ in neigh):
        return "C27"
    return "CS"


def _nitrogen_type(mol: MoleculeGraph, idx: int) -> str:
    atom = mol.atoms[idx]
    neigh = heavy_neighbors(mol, idx)
    n_h = total_hydrogens(mol, idx)
    if atom.aromatic:
        return "N12" if atom.formal_charge != 0 else "N11"
    if atom.formal_charge > 0:
        return "N10" if n_h >= 1 else "N13"
    if atom.formal_charge < 0:
        return "N14"
    orders = [bond.order for _, bond in neigh]
    if 3 in orders:
        return "N9"
    if n_h >= 2:
        return "N3" if any(mol.atoms[j].aromatic for j, _ in neigh) else "N1"
    if n_h == 1:
        if 2 in orders:
            return "N5"
        if len(neigh) == 2:
            return "N4" if any(mol.atoms[j].aromatic for j, _ in neigh) else "N2"
        return "NS"
    if 2 in orders:
        return "N6"
    if len(neigh) == 3:
        return "N8" if any(mol.atoms[j].aromatic for j, _ in neigh) else "N7"
    return "NS"


def _oxygen_type(mol: MoleculeGraph, idx: int) -> str:
    atom = mol.atoms[idx]
    neigh = heavy_neighbors(mol, idx)
    n_h = total_hydrogens(mol, idx)
    if atom.aromatic:
        return "O1"
    if atom.formal_charge < 0:
        symbols = {mol.atoms[j].symbol for j, _ in neigh}
        if "N" in symbols:
            return "O5"
        if "S" in symbols:
            return "O6"
        for j, _ in neigh:
            if mol.atoms[j].symbol == "C" and _has_double_to_oxygen(mol, j):
                return "O12"
        return "O7"
    if n_h >= 1:
        return "O2"
    doubles = [(j, bond) for j, bond in neigh if bond.order == 2 and not bond.aromatic]
    if doubles:
        j, _ = doubles[0]
        partner = mol.atoms[j]
        if partner.symbol in ("N", "O"):
            return "O5"
        if partner.symbol == "S":
            return "O6"
        if partner.symbol == "C":
            if partner.aromatic:
                return "O8"
            others = [(mol.atoms[k], b) for k, b in heavy_neighbors(mol, j) if k != idx]
            if any(b.order == 2 and not b.aromatic for _, b in others):
                return "O9"  # cumulated carbonyl (O=C=O, ketene, isocyanate)
            if any(o.aromatic for o, _ in others):
                return "O10"
            if others and all(o.symbol != "C" for o, _ in others):
                return "O11"
            return "O9"
        return "OS"
    if len(neigh) == 2:
        return "O4" if any(mol.atoms[j].aromatic for j, _ in neigh) else "O3"
    return "OS"


def _hydrogen_contribution(mol: MoleculeGraph, idx: int) -> float:
    """Contribution of one hydrogen attached to heavy atom idx."""
    table = CRIPPEN_CONTRIBUTIONS
    atom = mol.atoms[idx]
    if atom.symbol == "C":
        return table["H1"]
    if atom.symbol == "N":
        return table["H3"]
    if atom.symbol == "O":
        symbols = [(mol.atoms[j], bond) for j, bond in heavy_neighbors(mol, idx)]
        for other, _ in symbols:
            if other.symbol == "N":
                return table["H3"]
        for other, _ in symbols:
            if other.symbol in ("O", "S"):
                return table["H4"]
        for j, _ in heavy_neighbors(mol, idx):
            other = mol.atoms[j]
            if other.symbol == "C" and not other.aromatic:
                if any(b.order == 2 and not b.aromatic
                       and mol.atoms[k].symbol in ("C", "N", "O", "S")
                       for k, b in mol.neighbors(j)):
                    return table["H4"]
        return table["H2"]
    return table["H2"]


def logp(mol: MoleculeGraph) -> float:
    table = CRIPPEN_CONTRIBUTIONS
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        symbol = atom.symbol
        if atom.atomic_number == 1:
            for j, _ in mol.neighbors(idx):
                if mol.atoms[j].atomic_number > 1:
                    total += _hydrogen_contribution(mol, j)
                    break
            continue
        if symbol == "C":
            total += table[_carbon_type(mol, idx)]
        elif symbol == "N":
            total += table[_nitrogen_type(mol, idx)]
        elif symbol == "O":
            total += table[_oxygen_type(mol, idx)]
        elif symbol == "S":
            if atom.aromatic:
                total += table["S3"]
            elif atom.formal_charge != 0:
                total += table["S2"]
            else:
                total += table["S1"]
        elif symbol == "P":
            total += table["P"]
        elif symbol in ("F", "Cl", "Br", "I"):
            if atom.formal_charge < 0 and not list(heavy_neighbors(mol, idx)):
                total += table["Hal"]
            else:
                total += table[symbol]
        elif symbol in METALS:
            total += table["Me1"]
        # unparameterised elements contribute 0
        total += mol.atoms[idx].implicit_h * _hydrogen_contribution(mol, idx)
    return total


# --- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class DescriptorSpec:
    id: str
    name: str
    unit: str
    description: str
    func: Callable[[MoleculeGraph], float]
    match_keys: tuple[str, ...] = ()


def _spec(id, name, unit, description, func, *match_keys):
    keys = {name.lower(), id.lower(), *(k.lower() for k in match_keys)}
    return DescriptorSpec(id, name, unit, description, func, tuple(sorted(keys)))


_CATALOG: tuple[DescriptorSpec, ...] = (
    _spec("molecular_weight", "Molecular Weight", "g/mol",
          "Sum of standard atomic weights including implicit hydrogens.",
          molecular_weight, "MW", "molar mass", "molecular mass"),
    _spec("heavy_atom_count", "Heavy Atom Count", "count",
          "Number of non-hydrogen atoms.",
          heavy_atom_count, "number of heavy atoms", "# heavy atoms"),
    _spec("num_h_bond_donors", "# Hydrogen Bond Donors", "count",
          "N or O atoms carrying at least one hydrogen.",
          h_bond_donors, "HBD", "number of hydrogen bond donors",
          "hydrogen bond donors", "h-bond donors", "# h-bond donors"),
    _spec("num_h_bond_acceptors", "# Hydrogen Bond Acceptors", "count",
          "N or O acceptors (pyrrole-type N, amide N, cations excluded).",
          h_bond_acceptors, "HBA", "number of hydrogen bond acceptors",
          "hydrogen bond acceptors", "h-bond acceptors", "# h-bond acceptors"),
    _spec("tpsa", "Topological Polar Surface Area", "Å²",
          "Fragment-contribution polar surface area (N/O plus S/P terms).",
          tpsa, "polar surface area", "PSA"),
    _spec("num_rotatable_bonds", "# Rotatable Bonds", "count",
          "Non-ring single bonds between heavy atoms of degree >= 2,"
          " amide C-N excluded.",
          rotatable_bonds, "rotatable bonds", "number of rotatable bonds"),
    _spec("num_rings", "# Rings", "count",
          "Smallest set of smallest rings (circuit rank).",
          ring_count, "rings", "number of rings", "ring count"),
    _spec("num_aromatic_rings", "# Aromatic Rings", "count",
          "Rings whose atoms and bonds are all aromatic.",
          aromatic_ring_count, "aromatic rings", "number of aromatic rings"),
    _spec("logp", "logP", "dimensionless",
          "Wildman-Crippen octanol/water partition coefficient estimate.",
          logp, "clogp", "partition coefficient", "lipophilicity",
          "octanol-water partition coefficient"),
    _spec("formal_charge_total", "Total Formal Charge", "e",
          "Sum of formal charges.",
          formal_charge_total, "formal charge", "net charge"),
    _spec("num_chiral_centers", "# Chiral Centers", "count",
          "Atoms with an explicit chirality tag.",
          chiral_center_count, "chiral centers", "number of chiral centers",
          "stereocenters"),
    _spec("num_carbon_atoms", "# Carbon Atoms", "count",
          "Carbon atom count.", lambda m: atom_count(m, "C"),
          "carbon atoms", "number of carbon atoms", "carbon count"),
    _spec("num_nitrogen_atoms", "# Nitrogen Atoms", "count",
          "Nitrogen atom count.", lambda m: atom_count(m, "N"),
          "nitrogen atoms", "number of nitrogen atoms", "nitrogen count"),
    _spec("num_oxygen_atoms", "# Oxygen Atoms", "count",
          "Oxygen atom count.", lambda m: atom_count(m, "O"),
          "oxygen atoms", "number of oxygen atoms", "oxygen count"),
    _spec("num_sulfur_atoms", "# Sulfur Atoms", "count",
          "Sulfur atom count.", lambda m: atom_count(m, "S"),
          "sulfur atoms", "number of sulfur atoms"),
    _spec("num_fluorine_atoms", "# Fluorine Atoms", "count",
          "Fluorine atom count.", lambda m: atom_count(m, "F"),
          "fluorine atoms", "number of fluorine atoms"),
    _spec("num_chlorine_atoms", "# Chlorine Atoms", "count",
          "Chlorine atom count.", lambda m: atom_count(m, "Cl"),
          "chlorine atoms", "number of chlorine atoms"),
    _spec("num_bromine_atoms", "# Bromine Atoms", "count",
          "Bromine atom count.", lambda m: atom_count(m, "Br"),
          "bromine atoms", "number of bromine atoms"),
    _spec("num_iodine_atoms", "# Iodine Atoms", "count",
          "Iodine atom count.", lambda m: atom_count(m, "I"),
          "iodine atoms", "number of iodine atoms"),
    _spec("num_hydrogen_atoms", "# Hydrogen Atoms", "count",
          "Hydrogen atom count (implicit plus explicit).",
          lambda m: atom_count(m, "H"),
          "hydrogen atoms", "number of hydrogen atoms"),
)

_BY_ID = {spec.id: spec for spec in _CATALOG}

DESCRIPTOR_IDS = tuple(spec.id for spec in _CATALOG)


def descriptor_catalog() -> tuple[DescriptorSpec, ...]:
    """Stable, ordered catalog of every supported descriptor."""
    return _CATALOG


def descriptor_by_id(descriptor_id: str) -> DescriptorSpec:
    try:
        return _BY_ID[descriptor_id]
    except KeyError:
        raise UnsupportedDescriptor(f"unknown descriptor id {descriptor_id!r}") from None


def compute_descriptor(mol: MoleculeGraph, descriptor_id: str) -> float:
    """Compute one catalog descriptor; deterministic for a given graph."""
    return float(descriptor_by_id(descriptor_id).func(mol))


def compute_all(mol: MoleculeGraph) -> dict[str, float]:
    return {spec.id: float(spec.func(mol)) for spec in _CATALOG}


def catalog_as_json() -> list[dict]:
    return [
        {"id": s.id, "name": s.name, "unit": s.unit, "description": s.description}
        for s in _CATALOG
    ]
