"""Bag-of-words vectorization into a compact sparse document-term matrix."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InputError

__all__ = ["SparseDocMatrix", "build_bow"]


@dataclass(frozen=True)
class SparseDocMatrix:
    """Per-document sparse term counts over a fixed vocabulary.

    ``rows[d]`` is a tuple of (term index, count) pairs sorted by term index;
    counts are strictly positive and every row is non-empty.
    """

    n_docs: int
    n_terms: int
    rows: tuple[tuple[tuple[int, int], ...], ...]
    vocabulary: dict[str, int]

    def validate(self) -> None:
        if len(self.rows) != self.n_docs:
            raise InputError("row count disagrees with n_docs", code="bow.bad-matrix")
        if len(self.vocabulary) != self.n_terms:
            raise InputError("vocabulary size disagrees with n_terms", code="bow.bad-matrix")
        for d, row in enumerate(self.rows):
            if not row:
                raise InputError(f"document {d} has an empty row", code="bow.bad-matrix")
            seen: set[int] = set()
            for idx, count in row:
                if not 0 <= idx < self.n_terms:
                    raise InputError(f"document {d}: term index {idx} out of range", code="bow.bad-matrix")
                if count <= 0:
                    raise InputError(f"document {d}: non-positive count", code="bow.bad-matrix")
                if idx in seen:
                    raise InputError(f"document {d}: duplicate term index {idx}", code="bow.bad-matrix")
                seen.add(idx)

    def term_of(self, index: int) -> str:
        # Inverse vocabulary lookup; built lazily would complicate frozen-ness,
        # and callers only need it for small reports.
        for term, i in self.vocabulary.items():
            if i == index:
                return term
        raise InputError(f"no term with index {index}", code="bow.bad-index")


def build_bow(docs: list[list[str]], min_df: int = 1, max_df_fraction: float = 1.0) -> SparseDocMatrix:
    """Count terms per document, keeping terms whose document frequency is
    within [min_df, max_df_fraction * n_docs].

    Raises on an empty corpus and on any document left with no surviving
    terms, naming the document by position.
    """
    if not docs:
        raise InputError("empty corpus", code="bow.empty-corpus")
    n = len(docs)
    df: Counter[str] = Counter()
    per_doc: list[Counter[str]] = []
    for doc in docs:
        counts = Counter(doc)
        per_doc.append(counts)
        df.update(counts.keys())
    max_df = max_df_fraction * n
    kept = sorted(t for t, f in df.items() if f >= min_df and f <= max_df)
    vocabulary = {t: i for i, t in enumerate(kept)}
    rows = []
    for d, counts in enumerate(per_doc):
        row = tuple(sorted((vocabulary[t], c) for t, c in counts.items() if t in vocabulary))
        if not row:
            raise InputError(
                f"document {d} has no terms left after df filtering", code="bow.empty-document"
            )
        rows.append(row)
    return SparseDocMatrix(n_docs=n, n_terms=len(kept), rows=tuple(rows), vocabulary=vocabulary)
