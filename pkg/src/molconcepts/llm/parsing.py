"""Parsers for every LLM response grammar the gateway consumes."""

from __future__ import annotations

import logging
import re

from ..errors import ParseError
from ..units import RawLabel, UNKNOWN, canonical_unit

log = logging.getLogger(__name__)

_ITEM = re.compile(
    r"^\s*\d+[.)]\s*(?P<name>[^(:\n]+?)"
    r"(?:\s*\((?P<unit>[^)]*)\))?"
    r"(?:\s*:\s*(?P<description>.*))?\s*$")

_NUMBER = re.compile(r"[-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")

_CATEGORY_TOKENS = {
    "yes", "no", "true", "false", "high", "medium", "low",
    "positive", "negative", "soluble", "insoluble",
}

_UNIT_TAIL = re.compile(r"^\s*(?P<unit>[^\s,;.]+(?:/[^\s,;.]+)?)")


def parse_concept_items(text: str) -> list[dict]:
    """Numbered-list items -> [{name, unit, description}], deduplicated."""
    items = []
    seen = set()
    for line in text.splitlines():
        match = _ITEM.match(line)
        if not match:
            continue
        name = match.group("name").strip().rstrip(".")
        if not name:
            continue
        key = name.lower()
        if key in seen:
            continue
        seen.add(key)
        items.append({
            "name": name,
            "unit": canonical_unit(match.group("unit")),
            "description": (match.group("description") or "").strip(),
        })
    if not items:
        raise ParseError("response contains no enumerable concept list")
    return items


def parse_label(text: str, requested_unit: str | None = None) -> RawLabel:
    """First well-formed number or category token; Unknown maps to Unknown."""
    if re.search(r"\bunknown\b", text, re.IGNORECASE):
        return UNKNOWN
    match = _NUMBER.search(text)
    if match:
        value = float(match.group(0))
        tail = text[match.end():]
        unit = None
        unit_match = _UNIT_TAIL.match(tail)
        if unit_match:
            candidate = canonical_unit(unit_match.group("unit"))
            # accept only plausible unit tokens, not stray words
            if candidate is not None and (
                    unit_match.group("unit").lower() in
                    ("c", "f", "k") or candidate != unit_match.group("unit").strip()
                    or any(ch in candidate for ch in "/²°")
                    or candidate in ("Celsius", "Fahrenheit", "Kelvin", "count",
                                     "dimensionless", "e", "L", "mL")):
                unit = candidate
        return RawLabel(value, unit or requested_unit)
    for token in re.findall(r"[A-Za-z]+", text):
        if token.lower() in _CATEGORY_TOKENS:
            return RawLabel(token.lower(), requested_unit)
    raise ParseError(f"no extractable value in response: {text[:80]!r}")


def parse_unit_pairs(text: str) -> dict[str, str]:
    """Lines of "Concept: unit" -> mapping; raises on an empty response."""
    pairs = {}
    for line in text.splitlines():
        line = line.strip().lstrip("-*").strip()
        line = re.sub(r"^\d+[.)]\s*", "", line)
        if ":" not in line:
            continue
        name, _, unit = line.partition(":")
        name = name.strip()
        unit = canonical_unit(unit.strip())
        if name and unit:
            pairs[name] = unit
    if not pairs:
        raise ParseError("no concept-to-unit pairs in response")
    return pairs


_FENCE = re.compile(r"```(?:python)?\s*\n(.*?)```", re.DOTALL)


def parse_code_block(text: str) -> str:
    """Extract the first fenced code block, exactly as written."""
    match = _FENCE.search(text)
    if not match:
        raise ParseError("response contains no fenced code block")
    return match.group(1)


def parse_tool_choice(text: str, ids: list[str], match_keys: dict[str, str],
                      aliases: dict[str, str]) -> str | None:
    """Map the response onto a catalog id, or None.

    Non-catalog function names degrade to None with a warning rather than
    failing the run.
    """
    cleaned = text.strip().strip("`\"'.")
    lowered = cleaned.lower()
    if re.fullmatch(r"none\.?", lowered):
        return None
    # direct id / name / alias matches on the whole response first
    for candidate in (lowered,):
        if candidate in (i.lower() for i in ids):
            return candidate
        if candidate in match_keys:
            return match_keys[candidate]
        if candidate in aliases:
            return aliases[candidate]
    # otherwise scan tokens
    tokens = re.findall(r"[A-Za-z_][A-Za-z0-9_]*", cleaned)
    for token in tokens:
        low = token.lower()
        if low == "none":
            return None
        if low in (i.lower() for i in ids):
            return low
        if low in aliases:
            return aliases[low]
        if low in match_keys:
            return match_keys[low]
    if tokens:
        log.warning("tool mapping named no catalog function: %r", cleaned[:60])
    return None
