"""Spherical K-Means baseline over L2-normalized TF-IDF rows.

Serves as the comparison point for the information-bottleneck clusterer;
the returned Partition carries the same information-theoretic summary so
the two are directly comparable.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .bow import SparseDocMatrix
from .errors import InputError
from .sib import Partition, _joint_csr, _objective_bits, _rebuild_joint

__all__ = ["tfidf_rows", "kmeans_cluster", "spherical_inertia"]

_MAX_ITER = 100


def tfidf_rows(matrix: SparseDocMatrix) -> sp.csr_matrix:
    """L2-normalized TF-IDF rows; idf(t) = ln(n_docs / df(t))."""
    n = matrix.n_docs
    df = np.zeros(matrix.n_terms, dtype=np.float64)
    for row in matrix.rows:
        for idx, _ in row:
            df[idx] += 1
    idf = np.log(n / df)
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for row in matrix.rows:
        for idx, count in row:
            indices.append(idx)
            data.append(count * idf[idx])
        indptr.append(len(indices))
    x = sp.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(n, matrix.n_terms),
    )
    norms = np.sqrt(np.asarray(x.multiply(x).sum(axis=1)).ravel())
    # A row can have zero norm only if every surviving term appears in all
    # docs (idf 0); keep such rows as zero vectors rather than dividing by 0.
    inv = np.where(norms > 0, 1.0 / np.where(norms > 0, norms, 1.0), 0.0)
    return sp.diags(inv) @ x


def _plus_plus_init(x: sp.csr_matrix, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centers[0] = x[first].toarray().ravel()
    d2 = np.maximum(2.0 - 2.0 * (x @ centers[0]), 0.0)
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0:
            choice = int(rng.integers(n))
        else:
            choice = int(rng.choice(n, p=d2 / total))
        centers[c] = x[choice].toarray().ravel()
        d2 = np.minimum(d2, np.maximum(2.0 - 2.0 * (x @ centers[c]), 0.0))
    return centers


def _lloyd(x: sp.csr_matrix, centers: np.ndarray) -> tuple[np.ndarray, float]:
    n, k = x.shape[0], centers.shape[0]
    assignment = np.full(n, -1, dtype=np.int64)
    for _ in range(_MAX_ITER):
        sims = x @ centers.T
        new_assignment = np.asarray(sims.argmax(axis=1)).ravel()
        if np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment
        for t in range(k):
            members = assignment == t
            if not members.any():
                # Refill an emptied cluster with the worst-served document.
                own = np.asarray(sims[np.arange(n), assignment]).ravel()
                worst = int(np.argmin(own))
                assignment[worst] = t
                members = assignment == t
            mean = np.asarray(x[members].sum(axis=0)).ravel()
            norm = np.linalg.norm(mean)
            centers[t] = mean / norm if norm > 0 else mean
    sims = x @ centers.T
    own = np.asarray(sims[np.arange(n), assignment]).ravel()
    inertia = float(np.maximum(2.0 - 2.0 * own, 0.0).sum())
    return assignment, inertia


def spherical_inertia(matrix: SparseDocMatrix, assignment) -> float:
    """Sum of squared distances of each TF-IDF row to its cluster's
    normalized mean direction; recomputed from scratch as an oracle."""
    x = tfidf_rows(matrix)
    assignment = np.asarray(list(assignment), dtype=np.int64)
    if assignment.shape[0] != matrix.n_docs:
        raise InputError("assignment length disagrees with matrix", code="cluster.bad-partition")
    total = 0.0
    for t in np.unique(assignment):
        members = assignment == t
        mean = np.asarray(x[members].sum(axis=0)).ravel()
        norm = np.linalg.norm(mean)
        center = mean / norm if norm > 0 else mean
        rows = x[members].toarray()
        total += float(((rows - center) ** 2).sum())
    return total


def kmeans_cluster(
    matrix: SparseDocMatrix,
    k: int,
    restarts: int = 10,
    seed: int = 0,
    trace: list | None = None,
) -> Partition:
    """Best-of-restarts spherical K-Means; restart quality is inertia.

    The returned Partition reports the same quantities as the
    information-bottleneck clusterer (cluster mass, term distribution per
    cluster, I(T;Y) in bits) so baselines are comparable.
    """
    n = matrix.n_docs
    if k < 1:
        raise InputError("k must be >= 1", code="cluster.bad-params")
    if k > n:
        raise InputError(f"k={k} exceeds document count {n}", code="cluster.k-too-large")
    x = tfidf_rows(matrix)
    best: tuple[float, np.ndarray] | None = None
    children = np.random.SeedSequence(seed).spawn(restarts)
    for r in range(restarts):
        rng = np.random.default_rng(children[r])
        centers = _plus_plus_init(x, k, rng)
        assignment, inertia = _lloyd(x, centers)
        if trace is not None:
            trace.append({"restart": r, "inertia": inertia})
        if best is None or inertia < best[0]:
            best = (inertia, assignment.copy())
    assert best is not None
    _, assignment = best
    indptr, indices, data, _ = _joint_csr(matrix)
    joint, mass = _rebuild_joint(indptr, indices, data, assignment, k, matrix.n_terms)
    p_y = np.zeros(matrix.n_terms, dtype=np.float64)
    np.add.at(p_y, indices, data)
    objective = _objective_bits(joint, mass, p_y)
    with np.errstate(divide="ignore", invalid="ignore"):
        centroid = np.where(mass[:, None] > 0, joint / np.where(mass[:, None] > 0, mass[:, None], 1.0), 0.0)
    return Partition(
        assignment=tuple(int(t) for t in assignment),
        cluster_mass=mass,
        cluster_centroid=centroid,
        objective=objective,
    )
