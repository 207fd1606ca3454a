"""Re-export: units live at molconcepts.units."""

from ..units import (  # noqa: F401
    RawLabel,
    UNKNOWN,
    UnitDictionary,
    canonical_unit,
    convert,
    convert_exact,
)
