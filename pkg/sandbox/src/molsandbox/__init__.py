"""Sandboxed execution of generated labeling functions and the fixture oracle."""

__version__ = "0.1.0"
