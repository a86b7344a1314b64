"""Per-cluster theme extraction: concepts statistically over-represented in
a cluster relative to the whole corpus, by the hypergeometric upper tail,
with multiple-testing control and relatedness-based deduplication."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import InputError
from .sib import Partition
from .textcore import SentenceRecord

__all__ = [
    "EnrichmentQuery",
    "ThemeEntry",
    "ThemeResult",
    "enrichment_pvalue",
    "bh_correct",
    "extract_themes",
]

CONCEPT_LAYER = "CONCEPT"

RelatednessScorer = Callable[[str, str], float]


@dataclass(frozen=True)
class EnrichmentQuery:
    """Counts for one concept-in-cluster test.

    N sentences overall, K of them mentioning the concept; the cluster has
    n sentences, k of which mention the concept.
    """

    N: int
    K: int
    n: int
    k: int

    def validate(self) -> None:
        if self.N < 1:
            raise InputError("N must be >= 1", code="themes.bad-query")
        if not (0 <= self.K <= self.N and 0 <= self.n <= self.N):
            raise InputError("need 0 <= K, n <= N", code="themes.bad-query")
        if not 0 <= self.k <= min(self.K, self.n):
            raise InputError("need 0 <= k <= min(K, n)", code="themes.bad-query")


@dataclass(frozen=True)
class ThemeEntry:
    concept: str
    p: float
    k: int
    K: int


@dataclass(frozen=True)
class ThemeResult:
    cluster: int
    themes: tuple[ThemeEntry, ...]
    alpha: float

    def to_payload(self) -> dict:
        return {
            "cluster": self.cluster,
            "themes": [
                {"concept": t.concept, "p": t.p, "k": t.k, "K": t.K} for t in self.themes
            ],
        }


def _log_comb(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    out = gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)
    return np.where((b < 0) | (b > a), -np.inf, out)


def enrichment_pvalue(q: EnrichmentQuery) -> float:
    """Upper tail P(X >= k) of the hypergeometric distribution, in log
    space so large populations neither overflow nor underflow."""
    q.validate()
    if q.k == 0:
        return 1.0
    i = np.arange(q.k, min(q.K, q.n) + 1)
    log_pmf = _log_comb(q.K, i) + _log_comb(q.N - q.K, q.n - i) - _log_comb(q.N, q.n)
    finite = log_pmf[np.isfinite(log_pmf)]
    if finite.size == 0:
        return 0.0
    return float(min(1.0, np.exp(logsumexp(finite))))


def bh_correct(pvalues: Sequence[float], alpha: float) -> set[int]:
    """Benjamini-Hochberg step-up: indices of all hypotheses accepted at
    false-discovery level alpha."""
    m = len(pvalues)
    if m == 0:
        return set()
    for p in pvalues:
        if not 0.0 <= p <= 1.0:
            raise InputError(f"p-value {p} outside [0, 1]", code="themes.bad-pvalue")
    order = sorted(range(m), key=lambda i: pvalues[i])
    cutoff_rank = 0
    for rank, idx in enumerate(order, start=1):
        if pvalues[idx] <= rank * alpha / m:
            cutoff_rank = rank
    return set(order[:cutoff_rank])


@dataclass(frozen=True)
class _BareAssignment:
    """Assignment-only stand-in for a Partition inside extract_themes."""

    assignment: tuple[int, ...]

    @property
    def k(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0


def extract_themes(
    partition: Partition | Sequence[int],
    sentences: Sequence[SentenceRecord],
    relatedness: RelatednessScorer,
    alpha: float = 0.05,
    theta_dedupe: float = 0.8,
) -> list[ThemeResult]:
    """Themes per cluster: concepts whose in-cluster frequency beats the
    corpus-wide rate, after one joint BH correction over every
    (cluster, concept) test, ranked by p-value, with near-duplicate
    concepts (relatedness >= theta_dedupe to a kept one) dropped.

    Accepts either a full Partition or a bare assignment sequence (cluster
    count taken as max label + 1). Concept occurrence is per sentence:
    several mentions in one sentence count once.
    """
    if not isinstance(partition, Partition):
        assignment = tuple(int(a) for a in partition)
        if any(a < 0 for a in assignment):
            raise InputError("cluster labels must be >= 0", code="themes.bad-input")
        partition = _BareAssignment(assignment)
    if len(partition.assignment) != len(sentences):
        raise InputError("partition length disagrees with sentence count", code="themes.bad-input")
    n_total = len(sentences)
    corpus_count: dict[str, int] = {}
    per_sentence_concepts: list[set[str]] = []
    for rec in sentences:
        if CONCEPT_LAYER not in rec.layers:
            raise InputError(
                f"sentence {rec.id!r} has no {CONCEPT_LAYER} layer", code="themes.missing-layer"
            )
        concepts = {span.tag for span in rec.layers[CONCEPT_LAYER]}
        per_sentence_concepts.append(concepts)
        for c in concepts:
            corpus_count[c] = corpus_count.get(c, 0) + 1

    tests: list[tuple[int, str, EnrichmentQuery]] = []
    for t in range(partition.k):
        member_ids = [i for i, a in enumerate(partition.assignment) if a == t]
        cluster_count: dict[str, int] = {}
        for i in member_ids:
            for c in per_sentence_concepts[i]:
                cluster_count[c] = cluster_count.get(c, 0) + 1
        for c in sorted(cluster_count):
            q = EnrichmentQuery(N=n_total, K=corpus_count[c], n=len(member_ids), k=cluster_count[c])
            tests.append((t, c, q))

    pvalues = [enrichment_pvalue(q) for _, _, q in tests]
    accepted = bh_correct(pvalues, alpha)

    results = []
    for t in range(partition.k):
        survivors = [
            (pvalues[i], tests[i][1], tests[i][2])
            for i in accepted
            if tests[i][0] == t
        ]
        survivors.sort(key=lambda item: (item[0], item[1]))
        kept: list[ThemeEntry] = []
        for p, concept, q in survivors:
            if any(relatedness(concept, prior.concept) >= theta_dedupe for prior in kept):
                continue
            kept.append(ThemeEntry(concept=concept, p=p, k=q.k, K=q.K))
        results.append(ThemeResult(cluster=t, themes=tuple(kept), alpha=alpha))
    return results
