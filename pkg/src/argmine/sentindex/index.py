"""Positional sentence index over tokens and annotation layers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import InputError
from ..textcore import AnnotationSpan, SentenceRecord

__all__ = ["SentenceIndex", "build_index", "register_lexicon_layer"]


@dataclass(frozen=True)
class SentenceIndex:
    """Immutable sentence store with positional postings.

    ``postings`` maps a lowercased term to (sentence id, ascending token
    positions) entries; ``layer_postings`` maps layer name -> tag ->
    (sentence id, span list) entries. Posting lists are sorted by sentence
    id. A layer with no spans still has an (empty) entry so queries can
    tell "known layer, no hits" from "unknown layer".
    """

    store: dict[str, SentenceRecord]
    postings: dict[str, tuple[tuple[str, tuple[int, ...]], ...]]
    layer_postings: dict[str, dict[str, tuple[tuple[str, tuple[tuple[int, int], ...]], ...]]]

    @property
    def sentence_count(self) -> int:
        return len(self.store)

    @property
    def term_count(self) -> int:
        return len(self.postings)

    def sorted_ids(self) -> list[str]:
        return sorted(self.store)

    def validate(self) -> None:
        for term, entries in self.postings.items():
            ids = [sid for sid, _ in entries]
            if ids != sorted(ids):
                raise InputError(f"postings for {term!r} not sorted", code="index.bad-postings")
            for sid, positions in entries:
                if sid not in self.store:
                    raise InputError(f"posting for {term!r} references unknown id {sid!r}", code="index.bad-postings")
                if list(positions) != sorted(positions):
                    raise InputError(f"positions for {term!r} in {sid!r} not ascending", code="index.bad-postings")
                n = len(self.store[sid].tokens)
                if any(not 0 <= p < n for p in positions):
                    raise InputError(f"position out of range for {term!r} in {sid!r}", code="index.bad-postings")
        for layer, tags in self.layer_postings.items():
            for tag, entries in tags.items():
                ids = [sid for sid, _ in entries]
                if ids != sorted(ids):
                    raise InputError(f"layer postings for {layer}:{tag} not sorted", code="index.bad-postings")
                for sid, spans in entries:
                    if sid not in self.store:
                        raise InputError(f"layer posting references unknown id {sid!r}", code="index.bad-postings")
                    n = len(self.store[sid].tokens)
                    for first, last in spans:
                        if not 0 <= first <= last < n:
                            raise InputError(f"bad span in {layer}:{tag} for {sid!r}", code="index.bad-postings")


def build_index(sentences: Sequence[SentenceRecord]) -> SentenceIndex:
    """Index tokens (lowercased) and every annotation layer of the input."""
    store: dict[str, SentenceRecord] = {}
    for rec in sentences:
        if rec.id in store:
            raise InputError(f"duplicate sentence id {rec.id!r}", code="index.duplicate-id")
        store[rec.id] = rec

    term_map: dict[str, list[tuple[str, tuple[int, ...]]]] = {}
    layer_map: dict[str, dict[str, list[tuple[str, tuple[tuple[int, int], ...]]]]] = {}
    for sid in sorted(store):
        rec = store[sid]
        positions: dict[str, list[int]] = {}
        for i, tok in enumerate(rec.tokens):
            positions.setdefault(tok.surface.lower(), []).append(i)
        for term, pos in positions.items():
            term_map.setdefault(term, []).append((sid, tuple(pos)))
        for layer, spans in rec.layers.items():
            tags = layer_map.setdefault(layer, {})
            by_tag: dict[str, list[tuple[int, int]]] = {}
            for span in spans:
                by_tag.setdefault(span.tag, []).append((span.first_token, span.last_token))
            for tag, tag_spans in by_tag.items():
                tags.setdefault(tag, []).append((sid, tuple(sorted(tag_spans))))

    return SentenceIndex(
        store=store,
        postings={t: tuple(v) for t, v in term_map.items()},
        layer_postings={
            layer: {tag: tuple(v) for tag, v in tags.items()} for layer, tags in layer_map.items()
        },
    )


def register_lexicon_layer(index: SentenceIndex, name: str, words: Iterable[str]) -> SentenceIndex:
    """A new index whose every sentence is annotated with layer ``name``:
    one span per token whose lowercased surface is in ``words``, tagged
    with the matched word. The original index is untouched."""
    if name in index.layer_postings:
        raise InputError(f"layer {name!r} already registered", code="index.layer-collision")
    word_set = {w.lower() for w in words}
    new_sentences = []
    for sid in index.sorted_ids():
        rec = index.store[sid]
        spans = tuple(
            AnnotationSpan(i, i, tok.surface.lower())
            for i, tok in enumerate(rec.tokens)
            if tok.surface.lower() in word_set
        )
        new_sentences.append(rec.with_layer(name, spans))
    return build_index(new_sentences)
