"""LLM gateway: prompts, transports, transcript cache, response parsers."""

from .gateway import (
    ConceptSpec,
    FunctionSource,
    concept_from_dict,
    concept_to_dict,
    generate_concepts,
    generate_labeling_function,
    generate_unit_dictionary,
    label_concept_direct,
    map_concept_to_tool,
    refine_concepts,
    with_tool_route,
)
from .transcripts import Transcript, TranscriptCache, prompt_hash
from .transport import HttpChatProvider, Transport

__all__ = [
    "ConceptSpec", "FunctionSource", "Transcript", "TranscriptCache",
    "Transport", "HttpChatProvider", "prompt_hash",
    "generate_concepts", "generate_unit_dictionary", "label_concept_direct",
    "generate_labeling_function", "map_concept_to_tool", "refine_concepts",
    "concept_to_dict", "concept_from_dict", "with_tool_route",
]
