"""Argumentation analytics engine.

Subpackages and modules expose text clustering, theme extraction,
wikification, an annotated sentence index with a template query language,
argument scoring, key point analysis, narrative generation, and evaluation
metrics. The HTTP service and CLI in :mod:`argmine.service` and
:mod:`argmine.cli` wrap the same handler functions.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import EngineError, InputError, SemanticError

__all__ = ["EngineError", "InputError", "SemanticError", "__version__"]
