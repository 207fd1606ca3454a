"""Loaders for the committed plain-text parameter tables."""

from __future__ import annotations

from pathlib import Path

_DATA_DIR = Path(__file__).parent / "data"


def _read_rows(name: str) -> list[list[str]]:
    rows = []
    for line in (_DATA_DIR / name).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    return rows


def _load_atomic_weights() -> tuple[dict[str, int], dict[str, float]]:
    numbers: dict[str, int] = {}
    weights: dict[str, float] = {}
    for symbol, number, weight in _read_rows("atomic_weights.txt"):
        numbers[symbol] = int(number)
        weights[symbol] = float(weight)
    return numbers, weights


def _load_tpsa() -> dict[str, float]:
    return {sig: float(value) for sig, value in _read_rows("tpsa_fragments.txt")}


def _load_crippen() -> dict[str, float]:
    table = {}
    for row in _read_rows("crippen_logp.txt"):
        table[row[0]] = float(row[1])
    return table


def _load_aliases() -> dict[str, str]:
    return {alias.lower(): target for alias, target in _read_rows("tool_aliases.txt")}


ATOMIC_NUMBERS, ATOMIC_WEIGHTS = _load_atomic_weights()
TPSA_FRAGMENTS = _load_tpsa()
CRIPPEN_CONTRIBUTIONS = _load_crippen()
TOOL_ALIASES = _load_aliases()
