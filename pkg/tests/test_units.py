from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from molconcepts.errors import UnknownUnit
from molconcepts.labeling.units import (
    RawLabel,
    UnitDictionary,
    canonical_unit,
    convert,
    convert_exact,
)

PAIRS = [
    ("Celsius", "Kelvin"), ("Fahrenheit", "Celsius"), ("Fahrenheit", "Kelvin"),
    ("g/mol", "kg/mol"), ("Å²", "nm²"), ("kcal/mol", "kJ/mol"), ("L", "mL"),
]


def test_exact_definitions():
    assert convert(0.0, "Celsius", "Kelvin") == 273.15
    assert convert(32.0, "Fahrenheit", "Celsius") == 0.0
    assert convert(80.1, "Celsius", "Celsius") == 80.1
    assert convert(212.0, "Fahrenheit", "Kelvin") == pytest.approx(373.15)
    assert convert(1.0, "kcal/mol", "kJ/mol") == 4.184
    assert convert(1.0, "kg/mol", "g/mol") == 1000.0
    assert convert(100.0, "Å²", "nm²") == 1.0


@given(st.fractions(min_value=-1000, max_value=1000),
       st.sampled_from(PAIRS))
def test_round_trip_exact_on_rationals(value, pair):
    a, b = pair
    there = convert_exact(value, a, b)
    back = convert_exact(there, b, a)
    assert back == value  # exact and invertible by construction


@given(st.floats(-500, 500, allow_nan=False),
       st.sampled_from(PAIRS))
def test_round_trip_exact_on_floats(value, pair):
    a, b = pair
    frac = Fraction(value)
    assert float(convert_exact(convert_exact(frac, a, b), b, a)) == value


def test_unknown_unit():
    with pytest.raises(UnknownUnit):
        convert(1.0, "Celsius", "g/mol")
    with pytest.raises(UnknownUnit):
        convert(1.0, "parsec", "Kelvin")


def test_canonical_spellings():
    assert canonical_unit("°C") == "Celsius"
    assert canonical_unit("K") == "Kelvin"
    assert canonical_unit("da") == "g/mol"
    assert canonical_unit("unitless") == "dimensionless"
    assert canonical_unit(None) is None
    assert canonical_unit("furlong") == "furlong"  # unknown passes through


def test_dictionary_normalize():
    dictionary = UnitDictionary({"Melting Point": "Kelvin"})
    out = dictionary.normalize(RawLabel(0.0, "Celsius"), "Kelvin")
    assert out.value == 273.15
    assert out.unit == "Kelvin"
    # identity conversion bit-exact
    same = dictionary.normalize(RawLabel(80.1, "Celsius"), "Celsius")
    assert same.value == 80.1
    # unknown label unit defaults to the column unit
    assumed = dictionary.normalize(RawLabel(5.0, None), "Kelvin")
    assert assumed.value == 5.0 and assumed.unit == "Kelvin"


def test_dictionary_prompt_text_and_json(tmp_path):
    dictionary = UnitDictionary({"Melting Point": "Celsius", "logP": "dimensionless"})
    text = dictionary.as_prompt_text()
    assert "Melting Point: Celsius" in text
    path = tmp_path / "units.json"
    dictionary.to_json(path)
    clone = UnitDictionary.from_json(path)
    assert dict(clone.items()) == dict(dictionary.items())


def test_unknown_cell_passes_through():
    dictionary = UnitDictionary({})
    from molconcepts.labeling.units import UNKNOWN
    assert dictionary.normalize(UNKNOWN, "Kelvin").is_unknown
