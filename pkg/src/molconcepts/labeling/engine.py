"""Route concepts to labeling strategies and assemble the LabelTable.

Priority heuristic: a tool mapping always wins; otherwise the direct and
generated-function routes each produce a sibling column and both enter
selection.
"""

from __future__ import annotations

import logging

from ..chem import compute_descriptor, descriptor_by_id, parse_smiles
from ..errors import (
    CacheMiss,
    NoViableRoute,
    ParseError,
    SandboxError,
    TransportError,
    UnknownUnit,
)
from ..llm import gateway
from ..llm.gateway import ConceptSpec
from .table import Column, LabelTable
from .units import UnitDictionary, canonical_unit

log = logging.getLogger(__name__)

# Deterministic encoding for recognized binary category tokens.
CATEGORY_VALUES = {
    "no": 0.0, "false": 0.0, "negative": 0.0, "low": 0.0, "insoluble": 0.0,
    "yes": 1.0, "true": 1.0, "positive": 1.0, "high": 1.0, "soluble": 1.0,
}


def _encode(value):
    if isinstance(value, str):
        return CATEGORY_VALUES.get(value.lower())
    return value


def _tool_column(concept: ConceptSpec, molecules, tool_id: str) -> Column:
    spec = descriptor_by_id(tool_id)
    values = [float(compute_descriptor(parse_smiles(m.smiles), tool_id))
              for m in molecules]
    return Column(concept.name, "tool", spec.unit, values,
                  ["strategy-3"] * len(values), tool_id=tool_id)


def _collect_labels(concept, molecules, unit, unit_dictionary, transport,
                    max_inflight):
    """One RawLabel (or exception sentinel) per molecule, in row order.

    Distinct molecules may be labeled concurrently up to ``max_inflight``;
    results are reassembled in dataset order so the table is identical
    either way.
    """
    def one(molecule):
        reference = molecule.name or molecule.smiles
        return gateway.label_concept_direct(reference, concept, unit,
                                            transport, unit_dictionary)

    if max_inflight <= 1:
        results = []
        for molecule in molecules:
            try:
                results.append(one(molecule))
            except (TransportError, ParseError) as exc:
                results.append(exc)
        return results
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=max_inflight) as pool:
        futures = [pool.submit(one, m) for m in molecules]
        results = []
        for future in futures:
            try:
                results.append(future.result())
            except (TransportError, ParseError) as exc:
                results.append(exc)
        return results


def _direct_column(concept: ConceptSpec, molecules, unit: str,
                   unit_dictionary: UnitDictionary, transport,
                   max_inflight: int = 1) -> Column:
    values, provenance = [], []
    labels = _collect_labels(concept, molecules, unit, unit_dictionary,
                             transport, max_inflight)
    for molecule, label in zip(molecules, labels):
        if isinstance(label, Exception):
            log.warning("direct label failed for %s/%s: %s",
                        molecule.molecule_id, concept.name, label)
            values.append(None)
            provenance.append(None)
            continue
        if label.is_unknown:
            values.append(None)
            provenance.append(None)
            continue
        try:
            normalized = unit_dictionary.normalize(label, unit)
        except UnknownUnit as exc:
            log.warning("unit %r not convertible for %s/%s: %s",
                        label.unit, molecule.molecule_id, concept.name, exc)
            values.append(None)
            provenance.append(None)
            continue
        encoded = _encode(normalized.value)
        if encoded is None:
            log.warning("unrecognized category %r for %s/%s; cell left Missing",
                        normalized.value, molecule.molecule_id, concept.name)
            values.append(None)
            provenance.append(None)
            continue
        values.append(float(encoded))
        provenance.append("strategy-1")
    return Column(concept.name, "direct", unit, values, provenance)


def _function_column(concept: ConceptSpec, molecules, unit: str,
                     transport, sandbox) -> Column:
    n = len(molecules)
    try:
        source = gateway.generate_labeling_function(concept, transport)
    except (TransportError, ParseError) as exc:
        log.warning("function generation failed for %s: %s", concept.name, exc)
        return Column(concept.name, "func", unit, [None] * n, [None] * n)
    values, provenance = [], []
    for molecule in molecules:
        if sandbox is None:
            values.append(None)
            provenance.append(None)
            continue
        try:
            result = sandbox.execute(source.code, parse_smiles(molecule.smiles))
            encoded = _encode(result)
            if encoded is None:
                values.append(None)
                provenance.append(None)
            else:
                values.append(float(encoded))
                provenance.append("strategy-2")
        except SandboxError as exc:
            log.warning("sandbox failure for %s/%s: %s",
                        molecule.molecule_id, concept.name, exc)
            values.append(None)
            provenance.append(None)
    return Column(concept.name, "func", unit, values, provenance)


def build_label_table(molecules, concepts: list[ConceptSpec], strategies,
                      transport, unit_dictionary: UnitDictionary | None = None,
                      sandbox=None, on_unroutable: str = "raise",
                      max_inflight: int = 1) -> LabelTable:
    """Assemble one column set per concept according to enabled strategies.

    ``strategies`` is a set drawn from {1, 2, 3}.  ``molecules`` is any
    sequence with ``molecule_id``/``smiles``/``name`` fields, in dataset
    row order.  ``max_inflight`` bounds concurrent direct-label calls.
    """
    strategies = set(strategies)
    if not strategies <= {1, 2, 3} or not strategies:
        raise ValueError(f"strategies must be a non-empty subset of {{1,2,3}}")
    unit_dictionary = unit_dictionary or UnitDictionary()

    table = LabelTable(tuple(m.molecule_id for m in molecules))
    for concept in concepts:
        tool_id = concept.tool_id if concept.route == "tool" else None
        if 3 in strategies and tool_id is None:
            try:
                tool_id = gateway.map_concept_to_tool(concept, transport)
            except (TransportError, ParseError, CacheMiss) as exc:
                if isinstance(exc, CacheMiss):
                    raise
                log.warning("tool mapping failed for %s: %s", concept.name, exc)
                tool_id = None
        if 3 in strategies and tool_id is not None:
            table.add_column(_tool_column(concept, molecules, tool_id))
            continue

        unit = unit_dictionary.unit_for(
            concept.name, canonical_unit(concept.unit) or "dimensionless")
        routed = False
        if 1 in strategies:
            table.add_column(_direct_column(concept, molecules, unit,
                                            unit_dictionary, transport,
                                            max_inflight))
            routed = True
        if 2 in strategies:
            table.add_column(_function_column(concept, molecules, unit,
                                              transport, sandbox))
            routed = True
        if not routed:
            message = (f"concept {concept.name!r} has no viable route under "
                       f"strategies {sorted(strategies)}")
            if on_unroutable == "raise":
                raise NoViableRoute(message)
            log.warning("%s; dropping concept", message)
            table.dropped_concepts.append(concept.name)
    return table
