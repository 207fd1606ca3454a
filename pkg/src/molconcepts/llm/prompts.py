"""Prompt template loading and rendering ({placeholder} text files)."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

TEMPLATE_DIR = Path(__file__).parent / "prompt_templates"

TEMPLATE_IDS = (
    "generate_concepts", "unit_dictionary", "label_direct",
    "function_describe", "function_code", "map_tool", "refine_concepts",
)


@lru_cache(maxsize=None)
def load_template(template_id: str) -> str:
    path = TEMPLATE_DIR / f"{template_id}.txt"
    if not path.exists():
        raise FileNotFoundError(f"no prompt template {template_id!r}")
    return path.read_text(encoding="utf-8")


def render(template_id: str, **values) -> str:
    return load_template(template_id).format(**values)
