"""Units: canonical names, the concept-to-unit dictionary, exact conversion.

Conversions are computed over rational numbers so every dictionary pair
is exact and invertible; floats only appear at the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownUnit

# Spelling variants -> canonical unit name.
_SPELLINGS = {
    "celsius": "Celsius", "°c": "Celsius", "c": "Celsius",
    "degc": "Celsius", "deg c": "Celsius", "centigrade": "Celsius",
    "fahrenheit": "Fahrenheit", "°f": "Fahrenheit", "f": "Fahrenheit",
    "kelvin": "Kelvin", "k": "Kelvin",
    "g/mol": "g/mol", "gram/mol": "g/mol", "g mol-1": "g/mol",
    "da": "g/mol", "dalton": "g/mol", "daltons": "g/mol", "amu": "g/mol",
    "kg/mol": "kg/mol",
    "å²": "Å²", "å^2": "Å²", "a²": "Å²", "a^2": "Å²", "angstrom²": "Å²",
    "angstrom^2": "Å²", "angstrom squared": "Å²", "å2": "Å²", "a2": "Å²",
    "nm²": "nm²", "nm^2": "nm²", "nm2": "nm²",
    "kcal/mol": "kcal/mol", "kj/mol": "kJ/mol",
    "l": "L", "liter": "L", "litre": "L", "ml": "mL", "milliliter": "mL",
    "count": "count", "integer": "count", "number": "count",
    "dimensionless": "dimensionless", "unitless": "dimensionless",
    "none": "dimensionless", "-": "dimensionless", "n/a": "dimensionless",
    "log units": "dimensionless", "logp units": "dimensionless",
    "e": "e", "elementary charge": "e",
}

# Multiplicative families: canonical unit -> factor into the family base.
_FAMILIES = {
    "molar_mass": {"g/mol": Fraction(1), "kg/mol": Fraction(1000)},
    "area": {"Å²": Fraction(1), "nm²": Fraction(100)},
    "molar_energy": {"kJ/mol": Fraction(1), "kcal/mol": Fraction(4184, 1000)},
    "volume": {"mL": Fraction(1), "L": Fraction(1000)},
}

# Temperature: affine maps onto Kelvin, (scale, offset): K = value*scale + offset.
_TO_KELVIN = {
    "Kelvin": (Fraction(1), Fraction(0)),
    "Celsius": (Fraction(1), Fraction(27315, 100)),
    "Fahrenheit": (Fraction(5, 9), Fraction(45967, 100) * Fraction(5, 9)),
}

_FAMILY_OF = {unit: family for family, units in _FAMILIES.items()
              for unit in units}


def canonical_unit(token: str | None) -> str | None:
    """Normalize a unit spelling; unknown spellings pass through stripped."""
    if token is None:
        return None
    text = token.strip()
    if not text:
        return None
    return _SPELLINGS.get(text.lower(), text)


def convert_exact(value: Fraction, from_unit: str, to_unit: str) -> Fraction:
    """Exact conversion over rationals; raises UnknownUnit for missing pairs."""
    if from_unit == to_unit:
        return value
    if from_unit in _TO_KELVIN and to_unit in _TO_KELVIN:
        scale_a, offset_a = _TO_KELVIN[from_unit]
        kelvin = value * scale_a + offset_a
        scale_b, offset_b = _TO_KELVIN[to_unit]
        return (kelvin - offset_b) / scale_b
    family_a = _FAMILY_OF.get(from_unit)
    family_b = _FAMILY_OF.get(to_unit)
    if family_a is not None and family_a == family_b:
        factor_from = _FAMILIES[family_a][from_unit]
        factor_to = _FAMILIES[family_a][to_unit]
        return value * factor_from / factor_to
    raise UnknownUnit(f"no conversion from {from_unit!r} to {to_unit!r}")


def convert(value: float, from_unit: str, to_unit: str) -> float:
    if from_unit == to_unit:
        return value  # identity, bit-exact
    return float(convert_exact(Fraction(value), from_unit, to_unit))


@dataclass(frozen=True)
class RawLabel:
    """One labeled cell before table assembly; value None marks Unknown."""
    value: float | str | None
    unit: str | None = None

    @property
    def is_unknown(self) -> bool:
        return self.value is None

    @property
    def is_numeric(self) -> bool:
        return isinstance(self.value, (int, float))


UNKNOWN = RawLabel(None, None)


class UnitDictionary:
    """Concept name -> canonical unit, plus the conversion rules above."""

    def __init__(self, mapping: dict[str, str] | None = None):
        self._units = {name.lower(): canonical_unit(unit) or "dimensionless"
                       for name, unit in (mapping or {}).items()}
        self._display = {name.lower(): name for name in (mapping or {})}

    def unit_for(self, concept_name: str, default: str = "dimensionless") -> str:
        return self._units.get(concept_name.lower(), default)

    def __contains__(self, concept_name: str) -> bool:
        return concept_name.lower() in self._units

    def __len__(self):
        return len(self._units)

    def items(self):
        for key, unit in sorted(self._units.items()):
            yield self._display[key], unit

    def as_prompt_text(self) -> str:
        """Rendered verbatim into direct-labeling prompts."""
        if not self._units:
            return "(no unit dictionary)"
        return "\n".join(f"{name}: {unit}" for name, unit in self.items())

    def normalize(self, label: RawLabel, column_unit: str) -> RawLabel:
        """Convert a cell to the column unit; exact, unit field rewritten."""
        if label.is_unknown or not label.is_numeric:
            return label
        source = canonical_unit(label.unit) or column_unit
        if source == column_unit:
            return RawLabel(label.value, column_unit)
        return RawLabel(convert(float(label.value), source, column_unit),
                        column_unit)

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(dict(self.items()), handle, indent=2, sort_keys=True,
                      ensure_ascii=False)
            handle.write("\n")

    @classmethod
    def from_json(cls, path) -> "UnitDictionary":
        with open(path, encoding="utf-8") as handle:
            return cls(json.load(handle))
