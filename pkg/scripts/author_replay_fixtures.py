#!/usr/bin/env python3
"""Record the committed replay transcripts for the demo pipelines.

Runs each demo pipeline once in record mode against a deterministic
rule-based provider (a stand-in for a live chat model), then moves the
recorded transcripts into data/replay/.  Offline fixture authoring only;
the committed transcripts are what CI replays.
"""

import hashlib
import re
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))

from molconcepts.chem import compute_all, parse_smiles  # noqa: E402
from molconcepts.pipeline import RunConfig, run_pipeline  # noqa: E402

FREESOLV_TASK = ("Predict the hydration free energy of a small organic "
                 "molecule in water (kcal/mol; more negative means more "
                 "favorable solvation).")
ESOL_TASK = ("Predict the aqueous solubility (log mol/L) of a small organic "
             "molecule.")
BBBP_TASK = ("Predict whether a molecule penetrates the blood-brain barrier "
             "(binary outcome).")

ITERATION_1 = """1. Molecular Weight (g/mol): total molecular mass
2. TPSA (Å²): topological polar surface area
3. # Hydrogen Bond Donors (count): N-H and O-H sites
4. # Rotatable Bonds (count): non-ring single bonds allowing rotation
5. # Nitrogen Atoms (count): nitrogen atom count
6. # Oxygen Atoms (count): oxygen atom count
7. Melting Point (Celsius): melting temperature of the pure compound
8. pKa (dimensionless): acid dissociation constant
"""

ITERATION_2 = """1. Molecular Weight (g/mol): total molecular mass
2. TPSA (Å²): topological polar surface area
3. # Hydrogen Bond Donors (count): N-H and O-H sites
4. # Rotatable Bonds (count): non-ring single bonds allowing rotation
5. logP (dimensionless): octanol-water partition coefficient
6. # Aromatic Rings (count): aromatic ring count
7. Boiling Point (Celsius): boiling temperature of the pure compound
"""

ITERATION_3 = """1. Molecular Weight (g/mol): total molecular mass
2. # Hydrogen Bond Donors (count): N-H and O-H sites
3. TPSA (Å²): topological polar surface area
4. # Rotatable Bonds (count): non-ring single bonds allowing rotation
"""

ESOL_CONCEPTS = """1. logP (dimensionless): octanol-water partition coefficient
2. Molecular Weight (g/mol): total molecular mass
3. TPSA (Å²): topological polar surface area
4. # Rotatable Bonds (count): non-ring single bonds allowing rotation
5. # Hydrogen Bond Donors (count): N-H and O-H sites
6. # Aromatic Rings (count): aromatic ring count
"""

BBBP_CONCEPTS = """1. logP (dimensionless): octanol-water partition coefficient
2. # Hydrogen Bond Acceptors (count): N and O lone-pair acceptors
3. TPSA (Å²): topological polar surface area
4. Molecular Weight (g/mol): total molecular mass
5. # Rings (count): ring count
"""

TOOL_MAP = {
    "molecular weight": "molecular_weight",
    "tpsa": "tpsa",
    "# hydrogen bond donors": "num_h_bond_donors",
    "# hydrogen bond acceptors": "num_h_bond_acceptors",
    "# rotatable bonds": "num_rotatable_bonds",
    "# nitrogen atoms": "num_nitrogen_atoms",
    "# oxygen atoms": "num_oxygen_atoms",
    "# aromatic rings": "num_aromatic_rings",
    "# rings": "num_rings",
    "logp": "logp",
    "melting point": "none",
    "boiling point": "none",
    "pka": "none",
}

UNITS = {
    "molecular weight": "g/mol", "tpsa": "Å²",
    "# hydrogen bond donors": "count", "# hydrogen bond acceptors": "count",
    "# rotatable bonds": "count", "# nitrogen atoms": "count",
    "# oxygen atoms": "count", "# aromatic rings": "count", "# rings": "count",
    "logp": "dimensionless", "melting point": "Celsius",
    "boiling point": "Celsius", "pka": "dimensionless",
}


def _noise(key: str, scale: float) -> float:
    digest = hashlib.sha256(key.encode()).digest()
    unit = int.from_bytes(digest[:4], "big") / 2 ** 32
    return (unit - 0.5) * 2 * scale


class RuleBasedProvider:
    """Deterministic stand-in for a chat model during fixture recording."""

    def __init__(self, concept_lists, molecules):
        self.concept_lists = list(concept_lists)
        self.refine_calls = 0
        self.molecules = molecules  # name -> descriptors

    def complete(self, prompt, model_id, temperature):
        if "Propose a diverse list" in prompt:
            return self.concept_lists[0]
        if "We are refining the concept list" in prompt:
            self.refine_calls += 1
            return self.concept_lists[min(self.refine_calls,
                                          len(self.concept_lists) - 1)]
        if "choose the single canonical unit" in prompt:
            names = re.findall(r"^- (.+)$", prompt, re.MULTILINE)
            return "\n".join(
                f"{n}: {UNITS.get(n.lower(), 'dimensionless')}" for n in names)
        if "descriptor engine exposes" in prompt:
            concept = re.search(r'computes the concept "(.+?)"', prompt).group(1)
            return TOOL_MAP.get(concept.lower(), "none")
        if "You will label one molecular concept" in prompt:
            return self._direct_label(prompt)
        raise AssertionError(f"unexpected prompt: {prompt[:80]}")

    def _direct_label(self, prompt):
        molecule = re.search(r"Molecule: (.+)", prompt).group(1).strip()
        concept = re.search(r"Concept: ([^(\n]+)", prompt).group(1).strip()
        d = self.molecules[molecule]
        key = concept.lower()
        if key == "melting point":
            value = (0.4 * d["molecular_weight"] + 18.0 * d["num_h_bond_donors"]
                     - 90.0 + _noise(f"mp/{molecule}", 25.0))
            return f"Melting point: {value:.1f} °C"
        if key == "boiling point":
            value = (0.9 * d["molecular_weight"] + 10.0 * d["num_h_bond_donors"]
                     + 20.0 + _noise(f"bp/{molecule}", 30.0))
            return f"Approximately {value:.1f} C"
        if key == "pka":
            # a sizeable fraction of molecules simply have no acidic proton
            if _noise(f"pka-missing/{molecule}", 1.0) > 0.74:
                return "Unknown - this compound has no acidic proton."
            value = 10.0 - 1.5 * d["num_h_bond_donors"] + _noise(
                f"pka/{molecule}", 3.0)
            return f"{value:.2f}"
        raise AssertionError(f"no rule for direct concept {concept!r}")


def record(config_path: Path, concept_lists):
    config = RunConfig.from_file(config_path)
    dataset_rows = {}
    import csv

    with open(config.dataset) as handle:
        for row in csv.DictReader(handle):
            descriptors = compute_all(parse_smiles(row["smiles"]))
            dataset_rows[row["name"]] = descriptors
            dataset_rows[row["smiles"]] = descriptors

    provider = RuleBasedProvider(concept_lists, dataset_rows)
    with tempfile.TemporaryDirectory() as tmp:
        config.transport = "record"
        config.transcripts = None
        config.run_dir = f"{tmp}/run"
        reports = run_pipeline(config, provider=provider)
        recorded = Path(config.run_dir) / "transcripts.jsonl"
        target = ROOT / "data" / "replay" / f"{config_path.stem}.jsonl"
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(recorded, target)
    for report in reports:
        print(f"  iteration {report.iteration}: kept={list(report.selection.kept)}"
              f" concepts={report.kept_concepts}")
    print(f"  -> {target} ({sum(1 for _ in open(target))} transcripts)")
    return reports


def main():
    print("freesolv_demo:")
    record(ROOT / "configs" / "freesolv_demo.json",
           [ITERATION_1, ITERATION_2, ITERATION_3])
    print("esol_demo:")
    record(ROOT / "configs" / "esol_demo.json", [ESOL_CONCEPTS])
    print("bbbp_demo:")
    record(ROOT / "configs" / "bbbp_demo.json", [BBBP_CONCEPTS])


if __name__ == "__main__":
    main()
