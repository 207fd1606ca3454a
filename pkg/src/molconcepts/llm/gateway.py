"""Gateway operations: every LLM interaction the pipeline performs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from ..chem import DESCRIPTOR_IDS, descriptor_catalog
from ..chem.tables import TOOL_ALIASES
from ..errors import ParseError
from ..units import RawLabel, UnitDictionary
from . import parsing
from .prompts import render
from .transport import Transport

log = logging.getLogger(__name__)

ROUTES = ("direct", "generated_function", "tool")


@dataclass(frozen=True)
class ConceptSpec:
    name: str
    description: str = ""
    unit: str | None = None
    route: str = "direct"
    tool_id: str | None = None
    iteration_born: int = 1

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if self.route == "tool" and self.tool_id not in DESCRIPTOR_IDS:
            raise ValueError(f"tool route needs a valid descriptor id, "
                             f"got {self.tool_id!r}")


@dataclass(frozen=True)
class FunctionSource:
    description: str
    code: str


def _dedup(specs):
    seen = set()
    out = []
    for spec in specs:
        key = spec.name.lower()
        if key in seen:
            continue
        seen.add(key)
        out.append(spec)
    return out


def generate_concepts(task_description: str, n: int, transport: Transport,
                      iteration: int = 1) -> list[ConceptSpec]:
    """Ask for up to n concepts; duplicates removed case-insensitively."""
    if not task_description.strip():
        raise ValueError("task description must be non-empty")
    prompt = render("generate_concepts", task_description=task_description,
                    n_concepts=n)
    response = transport.complete("generate_concepts", prompt)
    items = parsing.parse_concept_items(response)
    specs = [ConceptSpec(name=i["name"], description=i["description"],
                         unit=i["unit"], iteration_born=iteration)
             for i in items]
    return _dedup(specs)[:n]


def generate_unit_dictionary(concepts: list[ConceptSpec],
                             transport: Transport) -> UnitDictionary:
    """One canonical unit per concept; response overrides spec units."""
    if not concepts:
        raise ValueError("empty concept list")
    concept_list = "\n".join(f"- {c.name}" for c in concepts)
    prompt = render("unit_dictionary", concept_list=concept_list)
    response = transport.complete("unit_dictionary", prompt)
    pairs = {k.lower(): v for k, v in parsing.parse_unit_pairs(response).items()}
    mapping = {}
    for concept in concepts:
        mapping[concept.name] = pairs.get(
            concept.name.lower(), concept.unit or "dimensionless")
    return UnitDictionary(mapping)


def label_concept_direct(molecule_ref: str, concept: ConceptSpec, unit: str,
                         transport: Transport,
                         unit_dictionary: UnitDictionary | None = None) -> RawLabel:
    """Single-molecule direct label; refusals map to Unknown, never 0."""
    description = f" ({concept.description})" if concept.description else ""
    prompt = render(
        "label_direct",
        molecule_ref=molecule_ref,
        concept_name=concept.name,
        concept_description=description,
        unit=unit,
        unit_dictionary=(unit_dictionary.as_prompt_text()
                         if unit_dictionary else "(no unit dictionary)"),
    )
    response = transport.complete("label_direct", prompt)
    return parsing.parse_label(response, requested_unit=unit)


FEATURE_SCHEMA = """\
- atoms: list of element symbols, one per atom
- adjacency: square matrix; entry [i][j] is the bond order between atoms
  i and j (0 when unbonded, 1 for aromatic bonds)
- node_features: dict of per-atom lists - symbol, atomic_number,
  formal_charge, aromatic, implicit_h, in_ring
- edge_features: list of {a, b, order, aromatic} bond records
- smiles: the raw SMILES string"""

ARGUMENT_NAMES = "atoms, adjacency, node_features, edge_features, smiles"


def generate_labeling_function(concept: ConceptSpec, transport: Transport,
                               feature_schema: str = FEATURE_SCHEMA) -> FunctionSource:
    """Two-phase chain-of-thought: describe first, then write the code."""
    describe_prompt = render("function_describe", concept_name=concept.name,
                             feature_schema=feature_schema)
    description = transport.complete("function_describe", describe_prompt)
    code_prompt = render("function_code", concept_name=concept.name,
                         description=description,
                         argument_names=ARGUMENT_NAMES)
    response = transport.complete("function_code", code_prompt)
    code = parsing.parse_code_block(response)
    return FunctionSource(description=description.strip(), code=code)


def catalog_prompt_text(catalog=None) -> str:
    catalog = catalog or descriptor_catalog()
    return "\n".join(f"- {spec.id}: {spec.name} [{spec.unit}] - {spec.description}"
                     for spec in catalog)


def map_concept_to_tool(concept: ConceptSpec, transport: Transport,
                        catalog=None) -> str | None:
    """Return the catalog id computing this concept, or None.

    Exact catalog-name matches short-circuit without an LLM call.
    """
    catalog = catalog or descriptor_catalog()
    match_keys = {}
    for spec in catalog:
        for key in spec.match_keys:
            match_keys[key] = spec.id
    lowered = concept.name.lower().strip()
    if lowered in match_keys:
        return match_keys[lowered]

    prompt = render("map_tool", catalog=catalog_prompt_text(catalog),
                    concept_name=concept.name)
    response = transport.complete("map_tool", prompt)
    return parsing.parse_tool_choice(
        response, [spec.id for spec in catalog], match_keys, TOOL_ALIASES)


def refine_concepts(previous: list[ConceptSpec], selected: list[ConceptSpec],
                    feedback: str, task_description: str, n: int,
                    transport: Transport, iteration: int) -> list[ConceptSpec]:
    """Retain every selected concept; fill the rest from the response."""
    selected_names = {c.name.lower() for c in selected}
    previous_names = {c.name.lower() for c in previous}
    if not selected_names <= previous_names:
        raise ValueError("selected concepts must be a subset of previous")
    prompt = render("refine_concepts", task_description=task_description,
                    feedback=feedback, n_concepts=n)
    response = transport.complete("refine_concepts", prompt)
    try:
        items = parsing.parse_concept_items(response)
    except ParseError:
        if selected:
            log.warning("refinement response unparseable; keeping selection")
            items = []
        else:
            raise
    retained = list(selected)
    for item in items:
        if item["name"].lower() in {c.name.lower() for c in retained}:
            continue
        retained.append(ConceptSpec(
            name=item["name"], description=item["description"],
            unit=item["unit"], iteration_born=iteration))
    return _dedup(retained)


def concept_to_dict(spec: ConceptSpec) -> dict:
    return {"name": spec.name, "description": spec.description,
            "unit": spec.unit, "route": spec.route, "tool_id": spec.tool_id,
            "iteration_born": spec.iteration_born}


def concept_from_dict(data: dict) -> ConceptSpec:
    return ConceptSpec(
        name=data["name"], description=data.get("description", ""),
        unit=data.get("unit"), route=data.get("route", "direct"),
        tool_id=data.get("tool_id"), iteration_born=data.get("iteration_born", 1))


def with_tool_route(spec: ConceptSpec, tool_id: str) -> ConceptSpec:
    return replace(spec, route="tool", tool_id=tool_id)
