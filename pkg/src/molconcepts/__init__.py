"""Concept-bottleneck molecular property prediction.

Generates human-interpretable molecular concepts with an LLM (or a
recorded transcript cache), labels them per molecule via direct
prompting, generated functions, or the built-in descriptor engine, fits
simple explainable predictors on the resulting concept table, selects
useful concepts, and iterates.
"""

__version__ = "0.1.0"
