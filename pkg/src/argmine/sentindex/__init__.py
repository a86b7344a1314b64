"""Sentence-level positional index with annotation layers and a
gap-constrained template query language."""

from __future__ import annotations

from .index import SentenceIndex, build_index, register_lexicon_layer
from .persist import dump_postings_json, load_index, save_index
from .query import (
    Adjacent,
    Gap,
    LayerElem,
    Phrase,
    QueryMatch,
    QueryParseError,
    QueryPlan,
    Word,
    execute,
    parse_query,
    print_query,
)

__all__ = [
    "SentenceIndex",
    "build_index",
    "register_lexicon_layer",
    "save_index",
    "load_index",
    "dump_postings_json",
    "Word",
    "Phrase",
    "LayerElem",
    "Adjacent",
    "Gap",
    "QueryPlan",
    "QueryMatch",
    "QueryParseError",
    "parse_query",
    "print_query",
    "execute",
]
