"""Rule-based concept mention detection against a title/redirect lexicon,
plus the concept-relatedness seam used by theme deduplication.

Surfaces are matched greedily, longest match first at the leftmost
position, over token n-grams. Multi-token surfaces match
case-insensitively; single-token surfaces match case-insensitively only
when the text token is capitalized, and otherwise must reproduce a stored
cased form exactly, which keeps common nouns ("apple") from firing on
product titles ("Apple").
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Protocol

from .errors import InputError
from .textcore import AnnotationSpan, SentenceRecord, tokenize

__all__ = [
    "ConceptLexicon",
    "ConceptMention",
    "RelatednessScorer",
    "load_lexicon",
    "load_lexicon_files",
    "read_tsv_pairs",
    "wikify",
    "annotate_concepts",
    "relatedness_baseline",
]

CONCEPT_LAYER = "CONCEPT"


class RelatednessScorer(Protocol):
    def __call__(self, a: str, b: str) -> float: ...


@dataclass(frozen=True)
class ConceptMention:
    concept: str
    first_token: int
    last_token: int
    surface: str
    via_redirect: bool


@dataclass(frozen=True)
class _SurfaceEntry:
    concept: str
    via_redirect: bool
    blocked: bool
    # None for multi-token surfaces (always case-insensitive); for
    # single-token surfaces, the cased spellings seen in the source records.
    cased_forms: frozenset[str] | None


@dataclass(frozen=True)
class ConceptLexicon:
    """Immutable surface table: normalized token tuple -> concept entry."""

    entries: dict[tuple[str, ...], _SurfaceEntry]
    max_len_by_first: dict[str, int]
    n_titles: int
    n_redirects: int

    def __len__(self) -> int:
        return len(self.entries)


def _normalize(surface: str) -> str:
    s = unicodedata.normalize("NFC", surface.replace("_", " "))
    return re.sub(r"\s+", " ", s).strip()


def _surface_tokens(surface: str) -> tuple[str, ...]:
    return tuple(t.surface.lower() for t in tokenize(_normalize(surface)))


def read_tsv_pairs(lines: Iterable[str]) -> list[tuple[str, str]]:
    """Parse two-column TSV records; '#'-prefixed and blank lines ignored.
    A line without a tab is treated as a surface mapping to itself."""
    out = []
    for raw in lines:
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" in line:
            surface, target = line.split("\t", 1)
            out.append((surface.strip(), target.strip()))
        else:
            out.append((line.strip(), line.strip()))
    return out


def _resolve_redirects(redirect_map: dict[str, str], titles: set[str]) -> dict[str, str]:
    """Map every redirect source to its final title, transitively."""
    resolved: dict[str, str] = {}
    for source in redirect_map:
        if source in resolved:
            continue
        chain = [source]
        seen_at = {source: 0}
        node = source
        while True:
            node = redirect_map[node]
            if node in seen_at:
                cycle = chain[seen_at[node] :]
                start = cycle.index(min(cycle))
                ordered = cycle[start:] + cycle[:start]
                raise InputError(
                    "redirect cycle: " + ",".join(ordered), code="wikify.redirect-cycle"
                )
            if node in resolved:
                final = resolved[node]
                break
            if node not in redirect_map:
                if node not in titles:
                    raise InputError(
                        f"redirect chain from {source!r} ends at {node!r}, which is not a title",
                        code="wikify.dangling-redirect",
                    )
                final = node
                break
            seen_at[node] = len(chain)
            chain.append(node)
        for n in chain:
            resolved[n] = final
    return resolved


def load_lexicon(
    titles: Iterable[tuple[str, str]],
    redirects: Iterable[tuple[str, str]],
    blocklist: Iterable[str] = (),
) -> ConceptLexicon:
    """Build a fully resolved surface table from title and redirect records.

    Title records must map to themselves. Redirects are followed to their
    final title; a title that itself redirects resolves through the chain.
    A normalized surface claiming two distinct concepts is an error, as is
    a redirect cycle or a chain ending outside the title set.
    """
    title_records = list(titles)
    redirect_records = list(redirects)
    title_set: set[str] = set()
    for surface, target in title_records:
        if surface != target:
            raise InputError(
                f"title record {surface!r} must map to itself, got {target!r}",
                code="wikify.bad-title-record",
            )
        title_set.add(surface)

    redirect_map: dict[str, str] = {}
    for source, target in redirect_records:
        if source in redirect_map and redirect_map[source] != target:
            raise InputError(
                f"surface {source!r} redirects to both {redirect_map[source]!r} and {target!r}",
                code="wikify.ambiguous-surface",
            )
        redirect_map[source] = target
    resolved = _resolve_redirects(redirect_map, title_set)

    blocked_keys = {_surface_tokens(b) for b in blocklist if _normalize(b)}

    # Surface -> (concept, cased form). Titles resolve through their own
    # redirect record when one exists, so a moved title follows its target.
    contributions: list[tuple[str, str]] = []
    for t in sorted(title_set):
        contributions.append((t, resolved.get(t, t)))
    for source in sorted(redirect_map):
        contributions.append((source, resolved[source]))

    entries: dict[tuple[str, ...], _SurfaceEntry] = {}
    for surface, concept in contributions:
        key = _surface_tokens(surface)
        if not key:
            continue
        cased = _normalize(surface) if len(key) == 1 else None
        prior = entries.get(key)
        if prior is not None:
            if prior.concept != concept:
                raise InputError(
                    f"surface {surface!r} maps to both {prior.concept!r} and {concept!r}",
                    code="wikify.ambiguous-surface",
                )
            forms = prior.cased_forms
            if cased is not None and forms is not None:
                forms = forms | {cased}
            entries[key] = _SurfaceEntry(
                concept=concept,
                via_redirect=prior.via_redirect,
                blocked=key in blocked_keys,
                cased_forms=forms,
            )
            continue
        entries[key] = _SurfaceEntry(
            concept=concept,
            via_redirect=key != _surface_tokens(concept),
            blocked=key in blocked_keys,
            cased_forms=frozenset({cased}) if cased is not None else None,
        )

    max_len_by_first: dict[str, int] = {}
    for key in entries:
        first = key[0]
        if len(key) > max_len_by_first.get(first, 0):
            max_len_by_first[first] = len(key)
    return ConceptLexicon(
        entries=entries,
        max_len_by_first=max_len_by_first,
        n_titles=len(title_records),
        n_redirects=len(redirect_records),
    )


def load_lexicon_files(
    titles_path: str, redirects_path: str, blocklist_path: str | None = None
) -> ConceptLexicon:
    with open(titles_path, encoding="utf-8") as f:
        titles = read_tsv_pairs(f)
    with open(redirects_path, encoding="utf-8") as f:
        redirects = read_tsv_pairs(f)
    blocklist: list[str] = []
    if blocklist_path is not None:
        with open(blocklist_path, encoding="utf-8") as f:
            blocklist = [line.strip() for line in f if line.strip() and not line.lstrip().startswith("#")]
    return load_lexicon(titles, redirects, blocklist)


def _norm_token(tok: str) -> str:
    return unicodedata.normalize("NFC", tok).lower()


def wikify(sentence: SentenceRecord, lexicon: ConceptLexicon) -> list[ConceptMention]:
    """Non-overlapping concept mentions, greedy longest match at each
    position scanning left to right."""
    toks = sentence.tokens
    n = len(toks)
    lowered = [_norm_token(t.surface) for t in toks]
    nfc = [unicodedata.normalize("NFC", t.surface) for t in toks]
    mentions: list[ConceptMention] = []
    i = 0
    while i < n:
        max_len = min(lexicon.max_len_by_first.get(lowered[i], 0), n - i)
        matched = False
        for length in range(max_len, 0, -1):
            key = tuple(lowered[i : i + length])
            entry = lexicon.entries.get(key)
            if entry is None or entry.blocked:
                continue
            if entry.cased_forms is not None:
                token = nfc[i]
                capitalized = bool(token) and token[0].isupper()
                if not capitalized and token not in entry.cased_forms:
                    continue
            last = i + length - 1
            mentions.append(
                ConceptMention(
                    concept=entry.concept,
                    first_token=i,
                    last_token=last,
                    surface=sentence.text[toks[i].start : toks[last].end],
                    via_redirect=entry.via_redirect,
                )
            )
            i = last + 1
            matched = True
            break
        if not matched:
            i += 1
    return mentions


def annotate_concepts(sentence: SentenceRecord, lexicon: ConceptLexicon) -> SentenceRecord:
    """Return the sentence with a CONCEPT layer holding its mentions."""
    spans = tuple(
        AnnotationSpan(m.first_token, m.last_token, m.concept)
        for m in wikify(sentence, lexicon)
    )
    return sentence.with_layer(CONCEPT_LAYER, spans)


def relatedness_baseline(a: str, b: str) -> float:
    """Jaccard overlap of lowercased title-token sets; underscores and
    whitespace both separate tokens."""
    if not a.strip() or not b.strip():
        raise InputError("concept titles must be non-empty", code="wikify.empty-title")
    ta = {t for t in re.split(r"[\s_]+", a.lower()) if t}
    tb = {t for t in re.split(r"[\s_]+", b.lower()) if t}
    union = ta | tb
    if not union:
        return 0.0
    return len(ta & tb) / len(union)
