"""Template query language over the sentence index: parser, printer and
executor.

Grammar (the external contract):

    query   := element (sep element)*
    sep     := whitespace            -- strict adjacency, distance 0
             | "..." or the one-char ellipsis, optionally spaced
                                      -- gap of 1..W intervening tokens
    element := bare word             -- matches one token, case-insensitive
             | "quoted phrase"       -- consecutive tokens
             | <LAYER>               -- any span of that layer
             | <LAYER:Tag>           -- spans of that layer with that tag

Parse errors carry the character offset where the problem was detected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..errors import InputError
from .index import SentenceIndex

__all__ = [
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

DEFAULT_GAP_MAX = 10


class QueryParseError(InputError):
    code = "query.parse"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Word:
    term: str


@dataclass(frozen=True)
class Phrase:
    terms: tuple[str, ...]


@dataclass(frozen=True)
class LayerElem:
    name: str
    tag: str | None = None


@dataclass(frozen=True)
class Adjacent:
    pass


@dataclass(frozen=True)
class Gap:
    min: int = 1
    max: int = DEFAULT_GAP_MAX


Element = Union[Word, Phrase, LayerElem]
Separator = Union[Adjacent, Gap]


@dataclass(frozen=True)
class QueryPlan:
    elements: tuple[Element, ...]
    gaps: tuple[Separator, ...]

    def validate(self) -> None:
        if not self.elements:
            raise InputError("plan has no elements", code="query.bad-plan")
        if len(self.gaps) != len(self.elements) - 1:
            raise InputError("separator count must be element count - 1", code="query.bad-plan")
        for g in self.gaps:
            if isinstance(g, Gap) and (g.min < 1 or g.max < g.min):
                raise InputError("gap bounds must satisfy 1 <= min <= max", code="query.bad-plan")


@dataclass(frozen=True)
class QueryMatch:
    sentence_id: str
    element_spans: tuple[tuple[int, int], ...]


_ELLIPSIS_CHARS = ("...", "…")


def parse_query(text: str, default_gap_max: int = DEFAULT_GAP_MAX) -> QueryPlan:
    """Parse a template query; see the module grammar."""
    if default_gap_max < 1:
        raise InputError("default_gap_max must be >= 1", code="query.bad-plan")
    elements: list[Element] = []
    gaps: list[Separator] = []
    n = len(text)
    i = 0
    pending: Separator | None = None
    saw_space = False

    def push_element(elem: Element, at: int) -> None:
        nonlocal pending, saw_space
        if elements:
            if pending is None and not saw_space:
                raise QueryParseError("missing separator before element", at)
            gaps.append(pending if pending is not None else Adjacent())
        pending = None
        saw_space = False
        elements.append(elem)

    while i < n:
        ch = text[i]
        if ch.isspace():
            saw_space = True
            i += 1
            continue
        if text.startswith("...", i) or ch == "…":
            if not elements or pending is not None:
                raise QueryParseError("gap separator without a preceding element", i)
            pending = Gap(1, default_gap_max)
            i += 3 if text.startswith("...", i) else 1
            continue
        if ch == "<":
            close = text.find(">", i + 1)
            if close == -1:
                raise QueryParseError("unclosed layer element", n)
            body = text[i + 1 : close]
            if ":" in body:
                name, tag = body.split(":", 1)
            else:
                name, tag = body, None
            if not name:
                raise QueryParseError("empty layer name", i + 1)
            if tag is not None and not tag:
                raise QueryParseError("empty layer tag", close)
            push_element(LayerElem(name=name, tag=tag), i)
            i = close + 1
            continue
        if ch == '"':
            close = text.find('"', i + 1)
            if close == -1:
                raise QueryParseError("unclosed phrase", n)
            terms = tuple(w.lower() for w in text[i + 1 : close].split())
            if not terms:
                raise QueryParseError("empty phrase", close)
            push_element(Phrase(terms=terms), i)
            i = close + 1
            continue
        # Bare word: runs until whitespace, a delimiter, or an ellipsis.
        j = i
        while j < n:
            cj = text[j]
            if cj.isspace() or cj in '<"' or cj == "…" or text.startswith("...", j):
                break
            j += 1
        push_element(Word(term=text[i:j].lower()), i)
        i = j

    if not elements:
        raise QueryParseError("empty query", 0)
    if pending is not None:
        raise QueryParseError("dangling gap separator", n)
    plan = QueryPlan(elements=tuple(elements), gaps=tuple(gaps))
    plan.validate()
    return plan


def print_query(plan: QueryPlan) -> str:
    """Render a plan back to query text; reparsing with the same default
    gap bound yields an equal plan."""
    plan.validate()
    parts: list[str] = []
    for i, elem in enumerate(plan.elements):
        if i > 0:
            parts.append(" ... " if isinstance(plan.gaps[i - 1], Gap) else " ")
        if isinstance(elem, Word):
            parts.append(elem.term)
        elif isinstance(elem, Phrase):
            parts.append('"' + " ".join(elem.terms) + '"')
        else:
            parts.append(f"<{elem.name}>" if elem.tag is None else f"<{elem.name}:{elem.tag}>")
    return "".join(parts)


def _element_spans(plan_elem: Element, index: SentenceIndex) -> dict[str, list[tuple[int, int]]]:
    """Candidate spans per sentence for one element."""
    out: dict[str, list[tuple[int, int]]] = {}
    if isinstance(plan_elem, Word):
        for sid, positions in index.postings.get(plan_elem.term, ()):
            out[sid] = [(p, p) for p in positions]
    elif isinstance(plan_elem, Phrase):
        first = plan_elem.terms[0]
        length = len(plan_elem.terms)
        for sid, positions in index.postings.get(first, ()):
            tokens = [t.surface.lower() for t in index.store[sid].tokens]
            spans = [
                (p, p + length - 1)
                for p in positions
                if tokens[p : p + length] == list(plan_elem.terms)
            ]
            if spans:
                out[sid] = spans
    else:
        if plan_elem.name not in index.layer_postings:
            raise InputError(f"unknown layer {plan_elem.name!r}", code="query.unknown-layer")
        tags = index.layer_postings[plan_elem.name]
        selected = [tags[plan_elem.tag]] if plan_elem.tag is not None and plan_elem.tag in tags else []
        if plan_elem.tag is None:
            selected = list(tags.values())
        for entries in selected:
            for sid, spans in entries:
                out.setdefault(sid, []).extend(spans)
        for sid in out:
            out[sid] = sorted(set(out[sid]))
    return out


def _leftmost_match(
    span_lists: list[list[tuple[int, int]]], gaps: tuple[Separator, ...]
) -> tuple[tuple[int, int], ...] | None:
    """Lexicographically smallest valid span assignment, by backtracking
    over the sorted candidate lists."""
    chosen: list[tuple[int, int]] = []

    def extend(depth: int) -> bool:
        if depth == len(span_lists):
            return True
        for span in span_lists[depth]:
            if depth > 0:
                prev = chosen[-1]
                d = span[0] - prev[1] - 1
                sep = gaps[depth - 1]
                if isinstance(sep, Adjacent):
                    if d != 0:
                        continue
                elif not sep.min <= d <= sep.max:
                    if d > sep.max:
                        break
                    continue
            chosen.append(span)
            if extend(depth + 1):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def execute(
    plan: QueryPlan,
    index: SentenceIndex,
    limit: int | None = None,
    offset: int = 0,
) -> list[QueryMatch]:
    """All sentences matching the plan, ordered by sentence id, one
    leftmost match each, paginated by (limit, offset) after ordering."""
    plan.validate()
    if offset < 0 or (limit is not None and limit < 0):
        raise InputError("limit/offset must be non-negative", code="query.bad-pagination")
    per_element = [_element_spans(e, index) for e in plan.elements]
    candidates = set(per_element[0])
    for spans in per_element[1:]:
        candidates &= set(spans)
    matches = []
    for sid in sorted(candidates):
        result = _leftmost_match([sorted(spans[sid]) for spans in per_element], plan.gaps)
        if result is not None:
            matches.append(QueryMatch(sentence_id=sid, element_spans=result))
    if limit is None:
        return matches[offset:]
    return matches[offset : offset + limit]
