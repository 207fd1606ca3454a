import pytest

from molsandbox import refchem


def descriptors(smiles):
    return refchem.all_descriptors(refchem.molecule(smiles))


def test_methane():
    d = descriptors("C")
    assert d["molecular_weight"] == pytest.approx(16.043)
    assert d["num_hydrogen_atoms"] == 4
    assert d["heavy_atom_count"] == 1


def test_benzene():
    d = descriptors("c1ccccc1")
    assert d["tpsa"] == 0.0
    assert d["num_aromatic_rings"] == 1
    assert d["logp"] == pytest.approx(1.6866, abs=1e-4)


def test_diphenylamine():
    d = descriptors("N(c1ccccc1)c2ccccc2")
    assert d["heavy_atom_count"] == 13
    assert d["num_h_bond_donors"] == 1
    assert d["num_rings"] == 2


def test_kekule_promotion():
    mol = refchem.molecule("C1=CC=CC=C1")
    assert all(mol.aromatic[:6])


def test_ring_perception_is_circuit_rank():
    for smiles in ("C1CC1", "c1ccc2ccccc2c1", "C1CC2CCC1C2",
                   "CCN2c1ccccc1N(C)C(=S)c3cccnc23"):
        mol = refchem.molecule(smiles)
        heavy_edges = [e for e in mol.edges
                       if e[0] < mol.n_heavy and e[1] < mol.n_heavy]
        rank = len(heavy_edges) - mol.n_heavy + refchem._components(
            mol.n_heavy, heavy_edges)
        assert len(mol.rings) == rank


@pytest.mark.parametrize("bad", ["", "c1ccccc", "C((", "Xx", "C=", "cc"])
def test_parse_errors(bad):
    with pytest.raises(refchem.RefChemError):
        refchem.molecule(bad)


def test_valence_error():
    with pytest.raises(refchem.RefChemError):
        refchem.molecule("C(=O)(=O)(=O)C")


def test_wire_graph_shape():
    graph = refchem.wire_graph(refchem.molecule("c1cc[nH]c1"))
    assert len(graph["atoms"]) == 5
    nitrogen = next(a for a in graph["atoms"] if a["symbol"] == "N")
    assert nitrogen["implicit_h"] == 1
    assert nitrogen["aromatic"] is True
    assert graph["smiles"] == "c1cc[nH]c1"
