"""Speech composition from stance-filtered, quality-filtered arguments.

The generator keeps arguments that carry the requested stance, keeps the
best of those by quality, plans paragraphs either from key point analysis
or from information-theoretic clustering, and assembles the final text from
editable templates. Every surface edit is a deterministic cleanup rule, so
identical inputs always produce a byte-identical speech.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .bow import build_bow
from .errors import InputError, SemanticError
from .kpa import KpaParams, PairMatcher, TfidfCosineMatcher, canonical_sentences, run_kpa
from .scorers import ScorerRegistry, Topic, default_registry
from .sib import SibParams, sib_cluster
from .textcore import SentenceRecord
from .themes import RelatednessScorer, extract_themes
from .wikify import ConceptLexicon, annotate_concepts, relatedness_baseline

_TERMINAL = (".", "!", "?")

# Words too generic to serve as a fallback paragraph header.
_HEADER_STOPWORDS = frozenset(
    """the a an and or but of to in on for with is are was were be been this
    that it as at by we our they their you your not no than then more most
    should must can will would could may might have has had do does did from
    about into over under some any all very so if when while there here also
    its his her him she he who what which why how""".split()
)


def _data_text(name: str) -> str:
    return resources.files("argmine.data").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def load_templates() -> dict:
    """Opening/closing/connective templates from the bundled JSON file."""
    templates = json.loads(_data_text("narrative_templates.json"))
    for key in ("opening", "closing", "side", "connectives", "paragraph_lead"):
        if key not in templates:
            raise InputError(f"narrative template file is missing {key!r}")
    if not templates["connectives"]:
        raise InputError("narrative template file has no connectives")
    return templates


@lru_cache(maxsize=1)
def load_discourse_markers() -> tuple[str, ...]:
    """Leading fillers recognized by cleanup, longest first."""
    markers = []
    for line in _data_text("discourse_markers.txt").splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            markers.append(entry)
    return tuple(sorted(set(markers), key=lambda m: (-len(m), m)))


def _ensure_terminal(text: str) -> str:
    return text if text.endswith(_TERMINAL) else text + "."


def cleanup_rephrase(text: str, markers: Sequence[str] | None = None) -> str:
    """Normalize one argument: strip leading fillers, fix case and ending.

    Rules, in order: collapse whitespace; repeatedly strip a leading
    discourse marker followed by a comma; capitalize the first letter;
    ensure terminal punctuation. Applying the function twice changes
    nothing.
    """
    if not text or not text.strip():
        raise InputError("empty text")
    if markers is None:
        markers = load_discourse_markers()
    out = " ".join(text.split())
    stripped = True
    while stripped:
        stripped = False
        lower = out.lower()
        for marker in markers:
            if not lower.startswith(marker):
                continue
            rest = out[len(marker):].lstrip()
            if rest.startswith(","):
                out = rest[1:].lstrip()
                stripped = True
                break
    if not out:
        raise SemanticError(
            "nothing left after discourse-marker cleanup", code="narrative.empty-after-cleanup"
        )
    out = out[0].upper() + out[1:]
    return _ensure_terminal(out)


@dataclass(frozen=True)
class NarrativeParams:
    """Knobs for speech generation."""

    stance: str = "pro"
    min_stance_confidence: float = 0.0
    top_n_quality: int = 20
    paragraphs: int = 4
    args_per_paragraph: int = 3
    mode: str = "kpa"

    def validate(self) -> None:
        if self.stance not in ("pro", "con"):
            raise InputError(f"stance must be 'pro' or 'con', got {self.stance!r}")
        if not 0.0 <= self.min_stance_confidence <= 1.0:
            raise InputError("min_stance_confidence must lie in [0, 1]")
        if self.top_n_quality < 1:
            raise InputError("top_n_quality must be >= 1")
        if self.paragraphs < 1:
            raise InputError("paragraphs must be >= 1")
        if self.args_per_paragraph < 1:
            raise InputError("args_per_paragraph must be >= 1")
        if self.mode not in ("kpa", "clustering"):
            raise InputError(f"mode must be 'kpa' or 'clustering', got {self.mode!r}")


@dataclass(frozen=True)
class Paragraph:
    header: str
    arguments: tuple[str, ...]


@dataclass(frozen=True)
class Speech:
    opening: str
    paragraphs: tuple[Paragraph, ...]
    closing: str
    full_text: str

    def validate(self) -> None:
        for paragraph in self.paragraphs:
            for argument in paragraph.arguments:
                if self.full_text.count(argument) != 1:
                    raise InputError(
                        f"argument does not appear exactly once in the speech: {argument!r}"
                    )

    def to_payload(self) -> dict:
        return {
            "opening": self.opening,
            "paragraphs": [
                {"header": p.header, "arguments": list(p.arguments)} for p in self.paragraphs
            ],
            "closing": self.closing,
            "full_text": self.full_text,
        }


def _stance_filter(
    units: Sequence[SentenceRecord],
    topic: Topic,
    params: NarrativeParams,
    registry: ScorerRegistry,
) -> list[SentenceRecord]:
    kept = []
    for unit in units:
        try:
            label = registry.stance(unit, topic)
        except SemanticError:
            continue
        if label.label == params.stance and label.confidence >= params.min_stance_confidence:
            kept.append(unit)
    return kept


def _overlaps(text: str, accepted: Sequence[str]) -> bool:
    return any(text in other or other in text for other in accepted)


def _plan_kpa(
    units: Sequence[SentenceRecord],
    params: NarrativeParams,
    registry: ScorerRegistry,
    matcher: PairMatcher,
) -> list[tuple[str, list[str]]]:
    summary = run_kpa(
        [u.text for u in units],
        KpaParams(k_max=params.paragraphs, q_min=0.0, min_tokens=3, max_tokens=40, delta=1),
        matcher,
        registry,
    )
    records = {r.id: r for r in canonical_sentences([u.text for u in units])}
    ranked = sorted(
        summary.key_points,
        key=lambda kp: (-kp.salience, -sum(score for _, score in kp.matches)),
    )
    plan = []
    for kp in ranked[: params.paragraphs]:
        scored = []
        for sid, score in kp.matches:
            record = records[sid]
            scored.append((score * registry.quality(record), sid, record.text))
        scored.sort(key=lambda item: (-item[0], item[1]))
        plan.append((kp.text, [text for _, _, text in scored]))
    return plan


def _fallback_header(units: Sequence[SentenceRecord], position: int) -> str:
    counts: Counter[str] = Counter()
    for unit in units:
        for token in unit.tokens:
            word = token.surface.lower()
            if len(word) >= 3 and word.isalpha() and word not in _HEADER_STOPWORDS:
                counts[word] += 1
    if not counts:
        return f"Theme {position + 1}"
    word, _ = min(counts.items(), key=lambda item: (-item[1], item[0]))
    return word.capitalize()


def _plan_clustering(
    units: Sequence[SentenceRecord],
    params: NarrativeParams,
    registry: ScorerRegistry,
    lexicon: ConceptLexicon | None,
    relatedness: RelatednessScorer,
) -> list[tuple[str, list[str]]]:
    k = min(params.paragraphs, len(units))
    docs = [[token.surface.lower() for token in unit.tokens] for unit in units]
    matrix = build_bow(docs)
    partition = sib_cluster(matrix, SibParams(k=k, restarts=4, seed=0))

    headers: dict[int, str] = {}
    if lexicon is not None:
        annotated = [annotate_concepts(unit, lexicon) for unit in units]
        for result in extract_themes(partition, annotated, relatedness):
            if result.themes:
                headers[result.cluster] = result.themes[0].concept.replace("_", " ")

    clusters: dict[int, list[SentenceRecord]] = {}
    for unit, cluster in zip(units, partition.assignment):
        clusters.setdefault(cluster, []).append(unit)
    # Bigger clusters speak first.
    order = sorted(clusters, key=lambda cluster: (-len(clusters[cluster]), cluster))
    plan = []
    for position, cluster in enumerate(order):
        members = clusters[cluster]
        header = headers.get(cluster) or _fallback_header(members, position)
        ordered = sorted(
            members, key=lambda unit: (-registry.quality(unit), unit.id)
        )
        plan.append((header, [unit.text for unit in ordered]))
    return plan


def generate_narrative(
    topic: Topic,
    arguments: Sequence[str],
    params: NarrativeParams,
    registry: ScorerRegistry | None = None,
    matcher: PairMatcher | None = None,
    lexicon: ConceptLexicon | None = None,
    relatedness: RelatednessScorer = relatedness_baseline,
) -> Speech:
    """Compose a stance-consistent speech from raw argument texts.

    Arguments are split into sentences, filtered to the requested stance at
    the requested confidence, trimmed to the best top_n_quality by quality
    score, grouped into paragraphs (key point analysis or clustering with
    theme headers when a concept lexicon is given), cleaned up, and wrapped
    in opening/connective/closing templates.

    A paragraph body lists only sentences distinct from its header; when
    the header sentence is a paragraph's sole member the body is empty and
    the headline alone carries the point.
    """
    params.validate()
    if not arguments:
        raise InputError("no arguments given", code="narrative.empty")
    registry = registry if registry is not None else default_registry()
    matcher = matcher if matcher is not None else TfidfCosineMatcher()
    templates = load_templates()

    units = list(canonical_sentences(arguments))
    if not units:
        raise InputError("no sentences found in the arguments", code="narrative.empty")
    units = _stance_filter(units, topic, params, registry)
    if not units:
        raise SemanticError("no arguments with requested stance", code="narrative.no-stance-match")
    units.sort(key=lambda unit: (-registry.quality(unit), unit.id))
    units = units[: params.top_n_quality]

    if params.mode == "kpa":
        plan = _plan_kpa(units, params, registry, matcher)
    else:
        plan = _plan_clustering(units, params, registry, lexicon, relatedness)

    side = templates["side"][params.stance]
    opening = _ensure_terminal(templates["opening"].format(topic=topic.text, side=side))
    closing = _ensure_terminal(templates["closing"].format(topic=topic.text, side=side))
    connectives = templates["connectives"]

    headers = [cleanup_rephrase(raw_header) for raw_header, _ in plan]
    paragraphs = []
    blocks = []
    accepted = [opening, closing, *headers]
    for index, (_, candidate_texts) in enumerate(plan):
        header = headers[index]
        chosen = []
        for text in candidate_texts:
            if len(chosen) == params.args_per_paragraph:
                break
            cleaned = cleanup_rephrase(text)
            if _overlaps(cleaned, accepted):
                continue
            chosen.append(cleaned)
            accepted.append(cleaned)
        connective = connectives[index % len(connectives)]
        lead = templates["paragraph_lead"].format(connective=connective, header=header)
        blocks.append(" ".join([lead, *chosen]) if chosen else lead)
        paragraphs.append(Paragraph(header=header, arguments=tuple(chosen)))

    full_text = "\n\n".join([opening, *blocks, closing])
    speech = Speech(
        opening=opening,
        paragraphs=tuple(paragraphs),
        closing=closing,
        full_text=full_text,
    )
    speech.validate()
    return speech
