"""Shared text primitives: sentence splitting, tokenization and the record
types every other module consumes.

Offsets are Unicode scalar offsets into the sentence string (Python string
indices), never bytes. Nothing here lowercases; normalization is the
consumer's job. All functions are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from .errors import InputError

__all__ = [
    "Token",
    "AnnotationSpan",
    "SentenceRecord",
    "split_sentences",
    "tokenize",
    "make_sentence",
]


@dataclass(frozen=True)
class Token:
    """A token with its [start, end) character span in the sentence."""

    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class AnnotationSpan:
    """A tagged token range, inclusive on both ends."""

    first_token: int
    last_token: int
    tag: str


@dataclass(frozen=True)
class SentenceRecord:
    """A sentence with tokens and named annotation layers.

    ``layers`` maps a layer name (e.g. ``"CONCEPT"``, ``"PERSON"``) to spans
    over token indices. Records are treated as immutable; use
    :meth:`with_layer` to derive an annotated copy.
    """

    id: str
    text: str
    tokens: tuple[Token, ...]
    layers: dict[str, tuple[AnnotationSpan, ...]] = field(default_factory=dict)

    def with_layer(self, name: str, spans: list[AnnotationSpan] | tuple[AnnotationSpan, ...]) -> "SentenceRecord":
        layers = dict(self.layers)
        layers[name] = tuple(spans)
        return replace(self, layers=layers)

    def token_surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def span_text(self, span: AnnotationSpan) -> str:
        return self.text[self.tokens[span.first_token].start : self.tokens[span.last_token].end]

    def validate(self) -> None:
        """Raise InputError if any structural invariant is violated."""
        prev_end = -1
        for t in self.tokens:
            if not (0 <= t.start < t.end <= len(self.text)):
                raise InputError(f"token span ({t.start},{t.end}) out of bounds", code="sentence.bad-token")
            if t.start < prev_end:
                raise InputError("token offsets overlap or decrease", code="sentence.bad-token")
            if self.text[t.start : t.end] != t.surface:
                raise InputError(f"token surface {t.surface!r} does not match text slice", code="sentence.bad-token")
            prev_end = t.end
        for name, spans in self.layers.items():
            for s in spans:
                if not (0 <= s.first_token <= s.last_token < len(self.tokens)):
                    raise InputError(f"layer {name!r} span ({s.first_token},{s.last_token}) out of range", code="sentence.bad-span")


# Words keep internal hyphens and apostrophes ("co-operate", "don't");
# every other non-whitespace character becomes a single-char token.
_TOKEN_RE = re.compile(r"\w+(?:[-'’]\w+)*|\S")


def tokenize(sentence: str) -> list[Token]:
    """Split a sentence into tokens covering all non-whitespace characters."""
    return [Token(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(sentence)]


def make_sentence(sid: str, text: str) -> SentenceRecord:
    """Tokenize ``text`` into a SentenceRecord with no annotation layers."""
    return SentenceRecord(id=sid, text=text, tokens=tuple(tokenize(text)))


@lru_cache(maxsize=None)
def _default_abbreviations() -> frozenset[str]:
    data = resources.files("argmine.data").joinpath("abbreviations.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in data.splitlines() if line.strip())


def load_abbreviations(path: str) -> frozenset[str]:
    """Load an abbreviation list: one entry per line, trailing period included."""
    with open(path, encoding="utf-8") as f:
        return frozenset(line.strip().lower() for line in f if line.strip())


_BOUNDARY_RE = re.compile(r"[.!?]+")
_LEADING_PUNCT = "\"'‘“([{"


def split_sentences(text: str, *, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split text into sentences.

    A boundary is a run of ``.!?`` followed by whitespace and an uppercase
    letter or digit; a candidate period boundary is suppressed when the word
    ending at it is a known abbreviation ("Dr.", "U.S.", ...). Empty input
    yields an empty list.
    """
    if abbreviations is None:
        abbreviations = _default_abbreviations()
    out: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.end()
        # Need whitespace then an upper/digit to consider splitting here.
        j = end
        while j < len(text) and text[j].isspace():
            j += 1
        if j == end or j >= len(text):
            continue
        if not (text[j].isupper() or text[j].isdigit()):
            continue
        if m.group(0).endswith("."):
            # The whole non-whitespace run ending at the period, e.g. "(Dr."
            k = m.start()
            while k > 0 and not text[k - 1].isspace():
                k -= 1
            word = text[k:end].lstrip(_LEADING_PUNCT)
            if word.lower() in abbreviations:
                continue
        piece = text[start:end].strip()
        if piece:
            out.append(piece)
        start = j
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out
