"""Benchmark harness: cluster a labeled news corpus and score the result.

Loads the 20-group news dataset from either a JSON Lines dump or the
classic one-directory-per-group layout, strips the boilerplate that would
leak the label (headers, quoted replies, signature blocks), builds a
document-term matrix, clusters with both the information-theoretic
algorithm and spherical k-means, and reports AMI/ARI against the labels.
"""

from __future__ import annotations

import json
import re
import time
from collections import Counter
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .bow import SparseDocMatrix, build_bow
from .errors import InputError
from .kmeans import kmeans_cluster
from .metrics import ami, ari
from .sib import SibParams, sib_cluster

_TOKEN_RE = re.compile(r"\w\w+")
_QUOTE_RE = re.compile(r"^\s*(>|\|)")


@lru_cache(maxsize=1)
def load_stopwords() -> frozenset[str]:
    """Bundled English function-word list used by the benchmark."""
    raw = (resources.files("argmine.data") / "stopwords.txt").read_text(encoding="utf-8")
    return frozenset(
        line.strip() for line in raw.splitlines() if line.strip() and not line.startswith("#")
    )


@lru_cache(maxsize=1)
def load_boilerplate() -> frozenset[str]:
    """Posting-mechanics terms the benchmark drops along with stopwords."""
    raw = (resources.files("argmine.data") / "boilerplate.txt").read_text(encoding="utf-8")
    return frozenset(
        line.strip() for line in raw.splitlines() if line.strip() and not line.startswith("#")
    )


def benchmark_stopwords() -> frozenset[str]:
    return load_stopwords() | load_boilerplate()


def strip_header(text: str) -> str:
    """Drop the mail header block: everything up to the first blank line."""
    _, sep, body = text.partition("\n\n")
    return body if sep else text

def strip_quotes(text: str) -> str:
    """Drop quoted reply lines and the "X writes:" lines that introduce them."""
    kept = [
        line
        for line in text.split("\n")
        if not _QUOTE_RE.match(line) and not line.rstrip().endswith(("writes:", "wrote:"))
    ]
    return "\n".join(kept)

def strip_footer(text: str) -> str:
    """Drop a trailing signature block introduced by a dashed separator line."""
    lines = text.rstrip().split("\n")
    for i in range(len(lines) - 1, -1, -1):
        stripped = lines[i].strip()
        if stripped and stripped == "-" * len(stripped):
            # Only treat it as a signature when it is a short tail.
            if 0 < len(lines) - 1 - i <= 10 and i > 0:
                return "\n".join(lines[:i])
            return text
    return text

def clean_post(text: str) -> str:
    return strip_footer(strip_quotes(strip_header(text)))


def load_labeled_jsonl(path: str | Path) -> tuple[list[str], list[int]]:
    """Read {"text", "label"} records; text is used as-is."""
    texts: list[str] = []
    labels: list[int] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                texts.append(str(record["text"]))
                labels.append(int(record["label"]))
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError(f"bad record on line {lineno + 1} of {path}: {exc}") from exc
    if not texts:
        raise InputError(f"no records in {path}")
    return texts, labels


def load_labeled_dir(path: str | Path) -> tuple[list[str], list[int]]:
    """Read a directory of group subdirectories, one post per file.

    Posts are cleaned of headers, quoted replies and signature blocks.
    Labels follow the alphabetical order of the group directory names.
    """
    root = Path(path)
    groups = sorted(p for p in root.iterdir() if p.is_dir())
    if not groups:
        raise InputError(f"no group directories under {root}")
    texts: list[str] = []
    labels: list[int] = []
    for label, group in enumerate(groups):
        for post in sorted(group.iterdir()):
            if post.is_file():
                texts.append(clean_post(post.read_text(encoding="latin-1")))
                labels.append(label)
    return texts, labels


def load_dataset(path: str | Path) -> tuple[list[str], list[int]]:
    """Dispatch on the path: .jsonl file, directory of .jsonl splits, or
    a raw group-per-directory tree."""
    p = Path(path)
    if p.is_file():
        return load_labeled_jsonl(p)
    if not p.is_dir():
        raise InputError(f"no such dataset: {p}")
    splits = sorted(p.glob("*.jsonl"))
    if splits:
        texts: list[str] = []
        labels: list[int] = []
        for split in splits:
            t, l = load_labeled_jsonl(split)
            texts.extend(t)
            labels.extend(l)
        return texts, labels
    return load_labeled_dir(p)


def prepare_corpus(
    texts: list[str],
    labels: list[int],
    min_df: int = 3,
    max_df_fraction: float = 0.5,
    max_features: int | None = None,
    stopwords: frozenset[str] | None = None,
) -> tuple[SparseDocMatrix, list[int], int]:
    """Tokenize, apply document-frequency filtering, and drop empty docs.

    Tokens are lowercased runs of two or more word characters; any in the
    stopword set are discarded up front. With max_features, only that many
    most document-frequent terms inside the df window are kept. Dropping a
    document changes the frequency counts, so filtering is recomputed until
    the kept set is stable; the returned label list is aligned with the
    surviving documents and the third element counts the dropped ones.
    """
    if len(texts) != len(labels):
        raise InputError("texts and labels disagree in length")
    drop = stopwords or frozenset()
    docs = [[t for t in _TOKEN_RE.findall(text.lower()) if t not in drop] for text in texts]
    kept_indices = [i for i, doc in enumerate(docs) if doc]
    while True:
        n = len(kept_indices)
        if n == 0:
            raise InputError("every document is empty after filtering")
        df: Counter[str] = Counter()
        for i in kept_indices:
            df.update(set(docs[i]))
        max_df = max_df_fraction * n
        kept_terms = {t for t, f in df.items() if f >= min_df and f <= max_df}
        if max_features is not None and len(kept_terms) > max_features:
            ranked = sorted(kept_terms, key=lambda t: (-df[t], t))
            kept_terms = set(ranked[:max_features])
        survivors = [i for i in kept_indices if any(t in kept_terms for t in docs[i])]
        if len(survivors) == len(kept_indices):
            break
        kept_indices = survivors
    if max_features is None:
        final_docs = [docs[i] for i in kept_indices]
    else:
        final_docs = [[t for t in docs[i] if t in kept_terms] for i in kept_indices]
    matrix = build_bow(final_docs, min_df, max_df_fraction)
    return matrix, [labels[i] for i in kept_indices], len(texts) - len(kept_indices)


def eval_clustering(
    texts: list[str],
    labels: list[int],
    k: int = 20,
    restarts: int = 10,
    seed: int = 0,
    min_df: int = 3,
    max_df_fraction: float = 0.5,
    max_features: int | None = None,
    with_kmeans: bool = True,
    stopwords: frozenset[str] | None = None,
) -> dict:
    """Cluster the corpus both ways and score against the labels.

    With stopwords=None the bundled benchmark list applies (function words
    plus posting boilerplate); pass an empty set to keep every token.
    """
    if stopwords is None:
        stopwords = benchmark_stopwords()
    matrix, kept_labels, dropped = prepare_corpus(
        texts, labels, min_df, max_df_fraction, max_features, stopwords=stopwords
    )
    result: dict = {
        "n_docs": matrix.n_docs,
        "n_terms": matrix.n_terms,
        "n_dropped": dropped,
        "n_stopwords": len(stopwords),
        "k": k,
        "restarts": restarts,
        "seed": seed,
    }

    start = time.perf_counter()
    partition = sib_cluster(matrix, SibParams(k=k, restarts=restarts, seed=seed))
    sib_seconds = time.perf_counter() - start
    result["sib"] = {
        "ami": ami(kept_labels, list(partition.assignment)),
        "ari": ari(kept_labels, list(partition.assignment)),
        "objective_bits": partition.objective,
        "seconds": sib_seconds,
    }

    if with_kmeans:
        start = time.perf_counter()
        km = kmeans_cluster(matrix, k, restarts=restarts, seed=seed)
        km_seconds = time.perf_counter() - start
        result["kmeans"] = {
            "ami": ami(kept_labels, list(km.assignment)),
            "ari": ari(kept_labels, list(km.assignment)),
            "objective_bits": km.objective,
            "seconds": km_seconds,
        }
    return result


def format_eval(result: dict) -> str:
    """Plain-text report; the first line carries the headline numbers."""
    lines = [f"AMI={result['sib']['ami']:.3f} ARI={result['sib']['ari']:.3f}"]
    lines.append(
        f"docs={result['n_docs']} terms={result['n_terms']} dropped={result['n_dropped']} "
        f"k={result['k']} restarts={result['restarts']} seed={result['seed']}"
    )
    lines.append(
        f"sib: objective={result['sib']['objective_bits']:.4f} bits "
        f"time={result['sib']['seconds']:.1f}s"
    )
    if "kmeans" in result:
        km = result["kmeans"]
        lines.append(
            f"kmeans: AMI={km['ami']:.3f} ARI={km['ari']:.3f} "
            f"objective={km['objective_bits']:.4f} bits time={km['seconds']:.1f}s"
        )
    return "\n".join(lines)
