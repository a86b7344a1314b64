"""Key point analysis: summarize a comment collection as a few key points.

The pipeline splits comments into sentences, keeps concise high-quality
sentences as key point candidates, scores every (candidate, sentence) pair
with a pluggable matcher, greedily selects candidates that cover the most
still-uncovered sentences, and finally assigns each sentence to its best
matching key point. Salience of a key point is the number of sentences
assigned to it; coverage is the assigned fraction of all sentences.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Protocol

from .errors import InputError
from .scorers import ScorerRegistry, default_registry
from .textcore import SentenceRecord, make_sentence, split_sentences


class PairMatcher(Protocol):
    """Scores how well a sentence matches a key point, in [0, 1].

    Implementations must be deterministic and return 1.0 when both texts
    are identical. A matcher may additionally expose ``prepare(sentences)``;
    :func:`run_kpa` calls it once with the run's sentences so corpus-level
    statistics (document frequencies etc.) can be fitted.
    """

    def match(self, sentence: SentenceRecord, key_point: SentenceRecord) -> float: ...


def _lower_tokens(sentence: SentenceRecord) -> list[str]:
    return [token.surface.lower() for token in sentence.tokens]


class TokenOverlapMatcher:
    """Set overlap |A&B| / sqrt(|A|*|B|) over lowercased token sets."""

    def match(self, sentence: SentenceRecord, key_point: SentenceRecord) -> float:
        a = set(_lower_tokens(sentence))
        b = set(_lower_tokens(key_point))
        if not a or not b:
            return 1.0 if sentence.text == key_point.text else 0.0
        return len(a & b) / math.sqrt(len(a) * len(b))


class TfidfCosineMatcher:
    """Cosine of L2-normalized tf-idf vectors.

    Document frequencies come from the sentences handed to :meth:`prepare`;
    idf is smoothed (log((1 + n) / (1 + df)) + 1) so unseen terms stay
    finite. Before ``prepare`` runs, every term gets the same weight and the
    score degrades to a plain normalized-count cosine.
    """

    def __init__(self) -> None:
        self._idf: dict[str, float] = {}
        self._default_idf = 1.0

    def prepare(self, sentences: Sequence[SentenceRecord]) -> None:
        counts: Counter[str] = Counter()
        for sentence in sentences:
            counts.update(set(_lower_tokens(sentence)))
        n = len(sentences)
        self._idf = {t: math.log((1 + n) / (1 + df)) + 1.0 for t, df in counts.items()}
        self._default_idf = math.log(1.0 + n) + 1.0

    def _vector(self, sentence: SentenceRecord) -> dict[str, float]:
        counts = Counter(_lower_tokens(sentence))
        vec = {t: c * self._idf.get(t, self._default_idf) for t, c in counts.items()}
        norm = math.sqrt(sum(v * v for v in vec.values()))
        if norm == 0.0:
            return {}
        return {t: v / norm for t, v in vec.items()}

    def match(self, sentence: SentenceRecord, key_point: SentenceRecord) -> float:
        if sentence.text == key_point.text:
            return 1.0
        a = self._vector(sentence)
        b = self._vector(key_point)
        if len(b) < len(a):
            a, b = b, a
        dot = sum(v * b.get(t, 0.0) for t, v in a.items())
        return min(1.0, max(0.0, dot))


@dataclass(frozen=True)
class KpaParams:
    """Knobs for the key point analysis pipeline."""

    k_max: int = 10
    tau: float = 0.55
    tau_dup: float = 0.75
    q_min: float = 0.5
    min_tokens: int = 3
    max_tokens: int = 20
    delta: int = 2
    given_key_points: tuple[str, ...] | None = None
    multi_match: bool = False

    def validate(self) -> None:
        if self.k_max < 0:
            raise InputError("k_max must be >= 0")
        if not 0.0 <= self.tau <= 1.0:
            raise InputError("tau must lie in [0, 1]")
        if self.tau_dup < self.tau:
            raise InputError("tau_dup must be >= tau")
        if self.min_tokens < 1:
            raise InputError("min_tokens must be >= 1")
        if self.max_tokens < self.min_tokens:
            raise InputError("max_tokens must be >= min_tokens")
        if self.delta < 1:
            raise InputError("delta must be >= 1")
        if self.given_key_points is not None:
            if not self.given_key_points:
                raise InputError("given_key_points is present but empty")
            if any(not text.strip() for text in self.given_key_points):
                raise InputError("given_key_points contains a blank entry")


@dataclass(frozen=True)
class MatchTable:
    """Scores for every (candidate row, sentence column) pair."""

    candidate_ids: tuple[str, ...]
    candidate_texts: tuple[str, ...]
    sentence_ids: tuple[str, ...]
    scores: tuple[tuple[float, ...], ...]

    def validate(self) -> None:
        if len(self.candidate_ids) != len(self.candidate_texts):
            raise InputError("candidate ids and texts disagree in length")
        if len(self.scores) != len(self.candidate_ids):
            raise InputError("score table has wrong row count")
        for row in self.scores:
            if len(row) != len(self.sentence_ids):
                raise InputError("score table has a ragged row")
            for value in row:
                if not 0.0 <= value <= 1.0:
                    raise InputError(f"match score {value!r} outside [0, 1]")


@dataclass(frozen=True)
class KeyPoint:
    text: str
    salience: int
    # matches: (sentence id, score) sorted by descending score then id
    matches: tuple[tuple[str, float], ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class KeyPointSummary:
    """Selected key points plus how much of the input they cover."""

    key_points: tuple[KeyPoint, ...]
    coverage: float
    total_sentences: int

    def validate(self) -> None:
        if self.total_sentences < 0:
            raise InputError("total_sentences must be >= 0")
        if not 0.0 <= self.coverage <= 1.0:
            raise InputError("coverage must lie in [0, 1]")
        saliences = [kp.salience for kp in self.key_points]
        if any(s < 0 for s in saliences):
            raise InputError("salience must be >= 0")
        if saliences != sorted(saliences, reverse=True):
            raise InputError("key points must be ordered by descending salience")
        for kp in self.key_points:
            if kp.salience != len(kp.matches):
                raise InputError(f"key point {kp.text!r} salience disagrees with its matches")

    def to_payload(self) -> dict:
        return {
            "key_points": [
                {
                    "text": kp.text,
                    "salience": kp.salience,
                    "matches": [{"id": sid, "score": score} for sid, score in kp.matches],
                }
                for kp in self.key_points
            ],
            "coverage": self.coverage,
            "total_sentences": self.total_sentences,
        }


@dataclass(frozen=True)
class SalienceShift:
    """One key point's salience in the base period versus a newer one."""

    key_point: str
    salience_base: int
    salience_new: int

    def to_payload(self) -> dict:
        return {
            "key_point": self.key_point,
            "salience_base": self.salience_base,
            "salience_new": self.salience_new,
        }


def match_matrix(
    sentences: Sequence[SentenceRecord],
    candidates: Sequence[SentenceRecord],
    matcher: PairMatcher,
) -> MatchTable:
    """Score every candidate against every sentence."""
    if not sentences:
        raise InputError("no sentences to match")
    if not candidates:
        raise InputError("no candidates to match")
    rows = []
    for candidate in candidates:
        rows.append(tuple(matcher.match(sentence, candidate) for sentence in sentences))
    table = MatchTable(
        candidate_ids=tuple(c.id for c in candidates),
        candidate_texts=tuple(c.text for c in candidates),
        sentence_ids=tuple(s.id for s in sentences),
        scores=tuple(rows),
    )
    table.validate()
    return table


def _derive_dup_scores(table: MatchTable) -> tuple[tuple[float, ...], ...]:
    # Candidates that are themselves sentences: read pairwise scores off the
    # candidate columns of the main table.
    column = {sid: j for j, sid in enumerate(table.sentence_ids)}
    missing = [cid for cid in table.candidate_ids if cid not in column]
    if missing:
        raise InputError(
            f"cannot derive duplicate scores: candidate {missing[0]!r} is not a sentence; "
            "pass dup_scores explicitly"
        )
    return tuple(
        tuple(row[column[cid]] for cid in table.candidate_ids) for row in table.scores
    )


def greedy_select(
    table: MatchTable,
    params: KpaParams,
    dup_scores: Sequence[Sequence[float]] | None = None,
) -> tuple[str, ...]:
    """Pick candidates that cover the most not-yet-covered sentences.

    Each round takes the unselected candidate matching (score >= tau) the
    largest number of uncovered sentences, skipping candidates that match an
    already selected key point at >= tau_dup. Ties go to the higher total
    match mass, then the lower candidate index. Selection stops at k_max or
    when the best marginal gain drops below delta.
    """
    params.validate()
    table.validate()
    if dup_scores is None:
        dup = _derive_dup_scores(table)
    else:
        dup = tuple(tuple(float(v) for v in row) for row in dup_scores)
        if len(dup) != len(table.candidate_ids) or any(
            len(row) != len(table.candidate_ids) for row in dup
        ):
            raise InputError("dup_scores must be square over the candidates")

    matched = [
        {j for j, score in enumerate(row) if score >= params.tau} for row in table.scores
    ]
    mass = [sum(row) for row in table.scores]
    selected: list[int] = []
    covered: set[int] = set()
    while len(selected) < params.k_max:
        best_index = -1
        best_key: tuple[float, float, float] | None = None
        for i in range(len(table.candidate_ids)):
            if i in selected:
                continue
            if any(dup[i][j] >= params.tau_dup for j in selected):
                continue
            gain = len(matched[i] - covered)
            key = (gain, mass[i], -i)
            if best_key is None or key > best_key:
                best_key = key
                best_index = i
        if best_key is None or best_key[0] < params.delta:
            break
        selected.append(best_index)
        covered |= matched[best_index]
    return tuple(table.candidate_ids[i] for i in selected)


def assign(
    table: MatchTable,
    selected_ids: Sequence[str],
    tau: float,
    *,
    multi_match: bool = False,
) -> KeyPointSummary:
    """Assign each sentence to its best-scoring selected key point.

    A sentence is assigned only when its best score reaches tau; with
    multi_match it instead joins every key point scoring >= tau. Key points
    come back ordered by descending salience (stable on selection order).
    """
    table.validate()
    row_of = {cid: i for i, cid in enumerate(table.candidate_ids)}
    rows = []
    for cid in selected_ids:
        if cid not in row_of:
            raise InputError(f"selected id {cid!r} is not a candidate in the table")
        rows.append(row_of[cid])

    matches: list[list[tuple[str, float]]] = [[] for _ in rows]
    assigned = 0
    for j, sid in enumerate(table.sentence_ids):
        scores = [table.scores[i][j] for i in rows]
        if multi_match:
            hit = False
            for pos, score in enumerate(scores):
                if score >= tau:
                    matches[pos].append((sid, score))
                    hit = True
            assigned += 1 if hit else 0
        else:
            best_pos = -1
            best_score = -1.0
            for pos, score in enumerate(scores):
                if score > best_score:
                    best_score = score
                    best_pos = pos
            if best_pos >= 0 and best_score >= tau:
                matches[best_pos].append((sid, best_score))
                assigned += 1

    key_points = [
        KeyPoint(
            text=table.candidate_texts[row],
            salience=len(found),
            matches=tuple(sorted(found, key=lambda item: (-item[1], item[0]))),
        )
        for row, found in zip(rows, matches)
    ]
    key_points.sort(key=lambda kp: -kp.salience)
    total = len(table.sentence_ids)
    summary = KeyPointSummary(
        key_points=tuple(key_points),
        coverage=assigned / total if total else 0.0,
        total_sentences=total,
    )
    summary.validate()
    return summary


def canonical_sentences(comments: Sequence[str]) -> tuple[SentenceRecord, ...]:
    """Split comments into sentences in a content-derived canonical order.

    Sentences are ordered by the hash of their text and given ids of the form
    ``<hash12>.<occurrence>``, so the result is invariant under permutation
    of the input comments.
    """
    texts = []
    for comment in comments:
        for part in split_sentences(comment):
            stripped = part.strip()
            if stripped:
                texts.append(stripped)
    digests = sorted((hashlib.sha256(t.encode("utf-8")).hexdigest(), t) for t in texts)
    records = []
    previous = None
    occurrence = 0
    for digest, text in digests:
        occurrence = occurrence + 1 if text == previous else 0
        previous = text
        records.append(make_sentence(f"{digest[:12]}.{occurrence}", text))
    return tuple(records)


def _prepare(matcher: PairMatcher, sentences: Sequence[SentenceRecord]) -> None:
    prepare = getattr(matcher, "prepare", None)
    if callable(prepare):
        prepare(sentences)


def run_kpa(
    comments: Sequence[str],
    params: KpaParams,
    matcher: PairMatcher,
    registry: ScorerRegistry | None = None,
) -> KeyPointSummary:
    """Run the full pipeline over a collection of comments.

    Candidates are sentences inside the token length window whose quality
    score reaches q_min; with given_key_points, candidate generation and
    selection are skipped and the given texts are matched directly. Coverage
    is always reported over all sentences.
    """
    params.validate()
    if not comments:
        raise InputError("no comments given", code="kpa.empty")
    sentences = canonical_sentences(comments)
    if not sentences:
        raise InputError("no sentences found in the comments", code="kpa.no-sentences")
    _prepare(matcher, sentences)

    if params.given_key_points is not None:
        candidates = [
            make_sentence(f"kp{i}", text) for i, text in enumerate(params.given_key_points)
        ]
        table = match_matrix(sentences, candidates, matcher)
        selected: Sequence[str] = table.candidate_ids
    else:
        registry = registry if registry is not None else default_registry()
        candidates = [
            s
            for s in sentences
            if params.min_tokens <= len(s.tokens) <= params.max_tokens
            and registry.quality(s) >= params.q_min
        ]
        if not candidates:
            raise InputError(
                "no candidate sentences survive filtering; lower q_min or widen "
                "the token length window",
                code="kpa.no-candidates",
            )
        table = match_matrix(sentences, candidates, matcher)
        selected = greedy_select(table, params)
        if not selected:
            return KeyPointSummary(
                key_points=(), coverage=0.0, total_sentences=len(sentences)
            )
    return assign(table, selected, params.tau, multi_match=params.multi_match)


def compare_over_time(
    summary_base: KeyPointSummary,
    comments_new: Sequence[str],
    params: KpaParams,
    matcher: PairMatcher,
) -> tuple[SalienceShift, ...]:
    """Re-score a newer comment batch against a base summary's key points."""
    if not summary_base.key_points:
        raise InputError("base summary has no key points")
    given = tuple(kp.text for kp in summary_base.key_points)
    new_params = replace(params, given_key_points=given)
    new_summary = run_kpa(comments_new, new_params, matcher)
    new_salience = {kp.text: kp.salience for kp in new_summary.key_points}
    return tuple(
        SalienceShift(
            key_point=kp.text,
            salience_base=kp.salience,
            salience_new=new_salience.get(kp.text, 0),
        )
        for kp in summary_base.key_points
    )


def format_report(
    summary: KeyPointSummary,
    sentence_texts: Mapping[str, str] | Iterable[SentenceRecord] | None = None,
    top_matches: int = 2,
) -> str:
    """Render a summary as the plain-text display used by the CLI."""
    texts: Mapping[str, str]
    if sentence_texts is None:
        texts = {}
    elif isinstance(sentence_texts, Mapping):
        texts = sentence_texts
    else:
        texts = {record.id: record.text for record in sentence_texts}
    matched = round(summary.coverage * summary.total_sentences)
    lines = [
        f"{summary.total_sentences} sentences, {len(summary.key_points)} key points, "
        f"coverage {summary.coverage:.3f} ({matched} matched)"
    ]
    for rank, kp in enumerate(summary.key_points, start=1):
        lines.append(f"{rank}. ({kp.salience}) {kp.text}")
        for sid, score in kp.matches[:top_matches]:
            lines.append(f"     {score:.3f}  {texts.get(sid, sid)}")
    return "\n".join(lines)
