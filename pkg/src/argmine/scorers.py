"""Argument scorers: pluggable slots with deterministic rule-based
baselines.

Each baseline is a pure function over a sentence, a topic, and bundled
word lists. The registry is the seam where stronger implementations plug
in; pipelines depend only on the slot contracts, never on the baselines
directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Protocol

from .errors import InputError, SemanticError
from .textcore import SentenceRecord

__all__ = [
    "Topic",
    "ScoredSentence",
    "StanceLabel",
    "Lexicons",
    "ScorerRegistry",
    "load_default_lexicons",
    "claim_score_baseline",
    "evidence_score_baseline",
    "quality_score_baseline",
    "stance_baseline",
    "claim_boundaries_baseline",
    "default_registry",
]

PROMOTING = "promoting"
SUPPRESSING = "suppressing"


@dataclass(frozen=True)
class Topic:
    """A debate topic, optionally anchored to a target concept.

    ``action_polarity`` states whether the topic text promotes or
    suppresses its target ("ban smoking" suppresses "Smoking"); the stance
    baseline requires it and it is deliberately explicit caller input.
    """

    text: str
    target: str | None = None
    action_polarity: str | None = None

    def validate(self) -> None:
        if not self.text.strip():
            raise InputError("topic text must be non-empty", code="topic.empty")
        if self.action_polarity not in (None, PROMOTING, SUPPRESSING):
            raise InputError(
                f"action_polarity must be {PROMOTING!r} or {SUPPRESSING!r}",
                code="topic.bad-polarity",
            )


@dataclass(frozen=True)
class ScoredSentence:
    sentence: SentenceRecord
    score: float
    kind: str

    def validate(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise InputError("score must lie in [0,1]", code="scorer.bad-score")
        if self.kind not in ("claim", "evidence", "quality"):
            raise InputError(f"unknown score kind {self.kind!r}", code="scorer.bad-kind")


@dataclass(frozen=True)
class StanceLabel:
    label: str
    confidence: float

    def validate(self) -> None:
        if self.label not in ("pro", "con"):
            raise InputError(f"label must be pro or con, got {self.label!r}", code="scorer.bad-label")
        if not 0.0 <= self.confidence <= 1.0:
            raise InputError("confidence must lie in [0,1]", code="scorer.bad-score")


@dataclass(frozen=True)
class Lexicons:
    opinion_markers: frozenset[str]
    evidence_patterns: tuple[tuple[str, ...], ...]
    sentiment: dict[str, int]
    reporting_verbs: frozenset[str]
    negators: frozenset[str] = frozenset({"not", "never", "no"})


def _data_lines(name: str) -> list[str]:
    text = resources.files("argmine.data").joinpath(name).read_text("utf-8")
    return [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


@lru_cache(maxsize=1)
def load_default_lexicons() -> Lexicons:
    sentiment: dict[str, int] = {}
    for line in _data_lines("sentiment.tsv"):
        word, sign = line.split("\t")
        sentiment[word.lower()] = int(sign)
    return Lexicons(
        opinion_markers=frozenset(w.lower() for w in _data_lines("opinion_markers.txt")),
        evidence_patterns=tuple(
            tuple(w.lower() for w in line.split()) for line in _data_lines("evidence_markers.txt")
        ),
        sentiment=sentiment,
        reporting_verbs=frozenset(w.lower() for w in _data_lines("reporting_verbs.txt")),
    )


def _word_tokens(sentence: SentenceRecord) -> list[str]:
    return [t.surface.lower() for t in sentence.tokens]


def _require_tokens(sentence: SentenceRecord) -> list[str]:
    toks = _word_tokens(sentence)
    if not toks:
        raise InputError("sentence has no tokens", code="scorer.empty-sentence")
    return toks


def _contains_sequence(tokens: list[str], needle: tuple[str, ...]) -> bool:
    n = len(needle)
    return any(tuple(tokens[i : i + n]) == needle for i in range(len(tokens) - n + 1))


def _target_tokens(target: str) -> tuple[str, ...]:
    return tuple(w for w in re.split(r"[\s_]+", target.lower()) if w)


def claim_score_baseline(
    sentence: SentenceRecord, topic: Topic, lexicons: Lexicons | None = None
) -> float:
    """0 when the topic's target is absent from the sentence; otherwise
    0.5 + 0.5 * min(1, distinct opinion markers / 2)."""
    lexicons = lexicons or load_default_lexicons()
    topic.validate()
    tokens = _require_tokens(sentence)
    if topic.target is not None and not _contains_sequence(tokens, _target_tokens(topic.target)):
        return 0.0
    markers = {t for t in tokens if t in lexicons.opinion_markers}
    return 0.5 + 0.5 * min(1.0, len(markers) / 2)


def _has_numeral(tokens: list[str]) -> bool:
    return any(any(c.isdigit() for c in t) for t in tokens)


def evidence_score_baseline(
    sentence: SentenceRecord, topic: Topic, lexicons: Lexicons | None = None
) -> float:
    """min(1, 0.4 * distinct evidence patterns + 0.2 * has_numeral)."""
    lexicons = lexicons or load_default_lexicons()
    topic.validate()
    tokens = _require_tokens(sentence)
    count = sum(1 for pat in lexicons.evidence_patterns if _contains_sequence(tokens, pat))
    return min(1.0, 0.4 * count + 0.2 * (1 if _has_numeral(tokens) else 0))


_PUNCT_RUN = re.compile(r"[^\w\s]{2,}")
_URL = re.compile(r"(?:https?://|www\.)", re.IGNORECASE)
_OPENERS = frozenset({"i", "we", "you", "my", "our", "your", "i'm", "we're", "you're", "i've"})


def quality_score_baseline(sentence: SentenceRecord) -> float:
    """Length trapezoid (rises 3..7 tokens, flat to 25, falls to 60) times
    a cleanliness factor that loses 0.25 per repeated-punctuation run and
    0.25 each for an all-caps token, a URL, and a first/second-person
    opener; both factors floored at 0."""
    tokens = _require_tokens(sentence)
    n = len(tokens)
    if n < 3 or n > 60:
        length = 0.0
    elif n < 7:
        length = (n - 3) / 4
    elif n <= 25:
        length = 1.0
    else:
        length = (60 - n) / 35
    runs = len(_PUNCT_RUN.findall(sentence.text))
    all_caps = any(t.surface.isalpha() and t.surface.isupper() and len(t.surface) >= 2 for t in sentence.tokens)
    url = bool(_URL.search(sentence.text))
    opener = tokens[0] in _OPENERS
    clean = 1.0 - 0.25 * runs - 0.25 * all_caps - 0.25 * url - 0.25 * opener
    return length * max(0.0, clean)


def stance_baseline(
    sentence: SentenceRecord, topic: Topic, lexicons: Lexicons | None = None
) -> StanceLabel:
    """Signed sentiment sum with negation flipping over the two preceding
    tokens; pro when the sign agrees with the topic's action polarity
    (negative sentiment supports a suppressing topic). Zero net polarity
    is an abstention, raised for the caller to decide."""
    lexicons = lexicons or load_default_lexicons()
    topic.validate()
    if topic.action_polarity is None:
        raise InputError("stance needs the topic's action polarity", code="topic.bad-polarity")
    tokens = _require_tokens(sentence)
    polarity = 0
    for i, tok in enumerate(tokens):
        sign = lexicons.sentiment.get(tok)
        if sign is None:
            continue
        window = tokens[max(0, i - 2) : i]
        if any(w in lexicons.negators or w.endswith("n't") for w in window):
            sign = -sign
        polarity += sign
    if polarity == 0:
        raise SemanticError("no stance signal in sentence", code="stance.abstain")
    agrees = polarity > 0
    if topic.action_polarity == SUPPRESSING:
        agrees = polarity < 0
    return StanceLabel(label="pro" if agrees else "con", confidence=min(1.0, abs(polarity) / 3))


def claim_boundaries_baseline(
    sentence: SentenceRecord, lexicons: Lexicons | None = None
) -> tuple[int, int]:
    """Character span of the claim: drops a leading reporting clause
    (1..4 subject tokens, a reporting verb, optional "that") and a
    trailing parenthetical citation; errors when fewer than 2 tokens
    would remain."""
    lexicons = lexicons or load_default_lexicons()
    tokens = _require_tokens(sentence)
    first = 0
    for p in range(1, min(5, len(tokens))):
        if tokens[p] in lexicons.reporting_verbs:
            first = p + 1
            if first < len(tokens) and tokens[first] == "that":
                first += 1
            break
    last = len(tokens) - 1
    j = last
    if tokens[j] in (".", "!", "?") and j > 0:
        j -= 1
    if tokens[j] == ")":
        for i in range(j - 1, first - 1, -1):
            if tokens[i] == "(":
                last = i - 1
                break
    if last - first + 1 < 2:
        raise SemanticError("claim residue shorter than 2 tokens", code="boundaries.too-short")
    return (sentence.tokens[first].start, sentence.tokens[last].end)


ClaimScorer = Callable[[SentenceRecord, Topic], float]
EvidenceScorer = Callable[[SentenceRecord, Topic], float]
QualityScorer = Callable[[SentenceRecord], float]


class StanceClassifier(Protocol):
    def __call__(self, sentence: SentenceRecord, topic: Topic) -> StanceLabel: ...


class BoundaryExtractor(Protocol):
    def __call__(self, sentence: SentenceRecord) -> tuple[int, int]: ...


@dataclass(frozen=True)
class ScorerRegistry:
    """Named scorer slots; every slot is filled (baselines by default) and
    any slot can be swapped for another implementation of its contract."""

    claim: ClaimScorer
    evidence: EvidenceScorer
    quality: QualityScorer
    stance: StanceClassifier
    boundaries: BoundaryExtractor

    @classmethod
    def from_config(cls, config: dict[str, str] | None = None) -> "ScorerRegistry":
        """Build a registry from slot-name -> implementation-id mapping;
        the only bundled implementation id is "baseline"."""
        config = dict(config or {})
        implementations: dict[str, dict[str, object]] = {
            "claim": {"baseline": claim_score_baseline},
            "evidence": {"baseline": evidence_score_baseline},
            "quality": {"baseline": quality_score_baseline},
            "stance": {"baseline": stance_baseline},
            "boundaries": {"baseline": claim_boundaries_baseline},
        }
        chosen: dict[str, object] = {}
        for slot, options in implementations.items():
            impl_id = config.pop(slot, "baseline")
            if impl_id not in options:
                raise InputError(
                    f"unknown implementation {impl_id!r} for slot {slot!r}",
                    code="registry.unknown-implementation",
                )
            chosen[slot] = options[impl_id]
        if config:
            raise InputError(
                f"unknown scorer slots: {sorted(config)}", code="registry.unknown-slot"
            )
        return cls(**chosen)  # type: ignore[arg-type]

    def replace(self, **slots) -> "ScorerRegistry":
        values = {
            "claim": self.claim,
            "evidence": self.evidence,
            "quality": self.quality,
            "stance": self.stance,
            "boundaries": self.boundaries,
        }
        for name, impl in slots.items():
            if name not in values:
                raise InputError(f"unknown scorer slot {name!r}", code="registry.unknown-slot")
            values[name] = impl
        return ScorerRegistry(**values)  # type: ignore[arg-type]


def default_registry() -> ScorerRegistry:
    return ScorerRegistry.from_config()
