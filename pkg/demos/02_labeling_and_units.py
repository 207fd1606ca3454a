"""Assemble a label table: strategy routing, unit normalization, imputation.

Uses a tiny scripted transport instead of a live model so the demo runs
offline; swap in Transport("live", ...) for real calls.
"""

from molconcepts.data_io import DataRow
from molconcepts.labeling import UnitDictionary, build_label_table
from molconcepts.llm import ConceptSpec

molecules = [
    DataRow("m0", "c1ccccc1", "benzene", 0.0),
    DataRow("m1", "CCO", "ethanol", 0.0),
    DataRow("m2", "Oc1ccccc1", "phenol", 0.0),
]

# Melting point is not tool-computable; the scripted "model" answers with
# mixed units and one refusal, exercising normalization and imputation.
RESPONSES = {
    "benzene": "About 5.5 °C",
    "ethanol": "Approximately 159 K",
    "phenol": "Unknown",
}


class ScriptedTransport:
    def complete(self, template_id, prompt):
        if template_id == "map_tool":
            return "none"
        for name, response in RESPONSES.items():
            if f"Molecule: {name}" in prompt:
                return response
        raise AssertionError(prompt[:60])


concepts = [
    ConceptSpec(name="TPSA"),             # resolves onto the tool catalog
    ConceptSpec(name="Melting Point", unit="Celsius"),
]
units = UnitDictionary({"Melting Point": "Celsius"})
table = build_label_table(molecules, concepts, {1, 3}, ScriptedTransport(),
                          units)

print("columns:", table.column_names())
for column in table.columns:
    print(f"\n{column.header}")
    for molecule_id, value, tag in zip(table.molecule_ids, column.values,
                                       column.provenance):
        print(f"  {molecule_id}: {value!r:>22}  ({tag})")

filled = table.imputed()  # mean imputation fills the refusal
melting = filled.column("Melting Point [direct]")
print("\nafter mean imputation:", melting.values, melting.provenance)
