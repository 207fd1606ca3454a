"""Parse SMILES and compute the descriptor catalog.

The descriptor engine is the "tool" labeling route: every concept the
mapper resolves onto the catalog gets exact, deterministic values from
here instead of an LLM call.
"""

from molconcepts.chem import compute_all, descriptor_catalog, parse_smiles

molecules = {
    "benzene": "c1ccccc1",
    "aspirin": "CC(=O)Oc1ccccc1C(=O)O",
    "diphenylamine": "N(c1ccccc1)c2ccccc2",
    "caffeine": "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
}

print("catalog:")
for spec in descriptor_catalog():
    print(f"  {spec.id:24s} [{spec.unit}] {spec.description}")

for name, smiles in molecules.items():
    mol = parse_smiles(smiles)
    values = compute_all(mol)
    print(f"\n{name} ({smiles})")
    print(f"  atoms={len(mol.atoms)} bonds={len(mol.bonds)} rings={len(mol.rings)}")
    for key in ("molecular_weight", "tpsa", "logp", "num_h_bond_donors",
                "num_h_bond_acceptors", "num_rotatable_bonds"):
        print(f"  {key:22s} {values[key]:10.4f}")
