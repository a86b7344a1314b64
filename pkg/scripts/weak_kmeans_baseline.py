"""Naive K-Means reference point for the benchmark margin analysis.

Plain Lloyd iterations on raw count vectors, random document init, one
restart. The shipped kmeans_cluster (spherical, TF-IDF, k-means++, best of
restarts) is a far stronger baseline; this measures how much of the margin
criterion's headroom that strength consumes.
"""

import sys
import time

sys.path.insert(0, "src")

import numpy as np
import scipy.sparse as sp

from argmine.metrics import ami, ari
from argmine.newsgroups import load_dataset, prepare_corpus


def to_csr(matrix) -> sp.csr_matrix:
    indptr = [0]
    indices = []
    data = []
    for row in matrix.rows:
        for term, count in row:
            indices.append(term)
            data.append(float(count))
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.array(data), np.array(indices), np.array(indptr)),
        shape=(matrix.n_docs, matrix.n_terms),
    )


def lloyd_raw_counts(x: sp.csr_matrix, k: int, seed: int, iters: int = 50) -> np.ndarray:
    rng = np.random.default_rng(seed)
    centroids = np.asarray(x[rng.choice(x.shape[0], size=k, replace=False)].todense())
    assign = np.full(x.shape[0], -1)
    for _ in range(iters):
        scores = (x @ centroids.T) - 0.5 * (centroids**2).sum(axis=1)[None, :]
        new_assign = np.asarray(scores).argmax(axis=1)
        if (new_assign == assign).all():
            break
        assign = new_assign
        for t in range(k):
            members = np.flatnonzero(assign == t)
            if members.size:
                centroids[t] = np.asarray(x[members].mean(axis=0)).ravel()
            else:
                centroids[t] = np.asarray(x[rng.integers(x.shape[0])].todense()).ravel()
    return assign


def main() -> None:
    texts, labels = load_dataset("/root/.cache/argmine/20newsgroups")
    from argmine.kmeans import tfidf_rows
    from argmine.newsgroups import benchmark_stopwords

    matrix, kept, _ = prepare_corpus(texts, labels, stopwords=benchmark_stopwords())
    raw = to_csr(matrix)
    df = np.asarray((raw > 0).sum(axis=0)).ravel()
    idf = np.log(raw.shape[0] / df)
    plain_tfidf = raw @ sp.diags(idf)

    variants = {
        "raw counts": raw,
        "plain tfidf (no L2, random init)": plain_tfidf,
        "l2 tfidf (random init, 1 restart)": tfidf_rows(matrix),
    }
    for name, x in variants.items():
        start = time.perf_counter()
        assign = lloyd_raw_counts(x, k=20, seed=0)
        secs = time.perf_counter() - start
        print(f"{name}: AMI={ami(kept, assign.tolist()):.4f} "
              f"ARI={ari(kept, assign.tolist()):.4f} time={secs:.1f}s", flush=True)


if __name__ == "__main__":
    main()
