"""Sequential information-bottleneck clustering over sparse term counts.

Documents are hard-assigned to k clusters so as to maximize the mutual
information I(T;Y) between cluster identity and term identity, under a
uniform document prior p(x) = 1/n. Each sweep draws every document once,
removes it from its cluster and reassigns it to the cluster with minimal
merge cost; the merge cost is evaluated over the document's support only,
which is what makes large vocabularies affordable. All information
quantities are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .bow import SparseDocMatrix
from .errors import InputError

__all__ = [
    "SibParams",
    "Partition",
    "merge_cost",
    "mutual_information",
    "sib_cluster",
]


@dataclass(frozen=True)
class SibParams:
    k: int
    restarts: int = 10
    max_sweeps: int = 15
    convergence_fraction: float = 0.02
    seed: int = 0

    def validate(self) -> None:
        if self.k < 1:
            raise InputError("k must be >= 1", code="cluster.bad-params")
        if self.restarts < 1:
            raise InputError("restarts must be >= 1", code="cluster.bad-params")
        if self.max_sweeps < 1:
            raise InputError("max_sweeps must be >= 1", code="cluster.bad-params")
        if not 0.0 <= self.convergence_fraction < 1.0:
            raise InputError("convergence_fraction must be in [0, 1)", code="cluster.bad-params")


@dataclass(frozen=True)
class Partition:
    """A hard clustering with its information-theoretic summary.

    ``cluster_mass[t]`` is p(t), ``cluster_centroid[t]`` is the distribution
    p(y|t) over terms, and ``objective`` is I(T;Y) in bits.
    """

    assignment: tuple[int, ...]
    cluster_mass: np.ndarray
    cluster_centroid: np.ndarray
    objective: float

    @property
    def k(self) -> int:
        return self.cluster_mass.shape[0]

    def validate(self) -> None:
        if abs(float(self.cluster_mass.sum()) - 1.0) > 1e-9:
            raise InputError("cluster masses must sum to 1", code="cluster.bad-partition")
        sums = self.cluster_centroid.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 1e-9):
            raise InputError("each centroid must sum to 1", code="cluster.bad-partition")
        if self.objective < 0:
            raise InputError("objective must be non-negative", code="cluster.bad-partition")
        mass = self.cluster_mass[self.cluster_mass > 0]
        h_t = float(-(mass * np.log2(mass)).sum())
        p_y = self.cluster_mass @ self.cluster_centroid
        p_y = p_y[p_y > 0]
        h_y = float(-(p_y * np.log2(p_y)).sum())
        if self.objective > min(h_t, h_y) + 1e-9:
            raise InputError("objective exceeds min(H(T), H(Y))", code="cluster.bad-partition")

    def to_payload(self) -> dict:
        return {
            "assignment": list(self.assignment),
            "objective_bits": self.objective,
            "k": self.k,
        }


def _xlog2x(v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    nz = v > 0
    out[nz] = v[nz] * np.log2(v[nz])
    return out


def merge_cost(
    doc_indices: np.ndarray,
    doc_probs: np.ndarray,
    doc_mass: float,
    centroid_probs: np.ndarray,
    centroid_mass: float,
) -> float:
    """Information loss, in bits, of merging a document into a cluster.

    Equals (p(x)+p(t)) times the Jensen-Shannon divergence between p(y|x)
    and p(y|t) with mixture weights proportional to the two masses, but is
    evaluated over the document's support only: terms outside the support
    contribute identical entropy before and after the merge and cancel.
    """
    if doc_mass <= 0 or centroid_mass <= 0:
        raise InputError("masses must be positive", code="cluster.zero-mass")
    w = float(doc_mass)
    m = float(centroid_mass)
    u = w * np.asarray(doc_probs, dtype=np.float64)
    j = m * np.asarray(centroid_probs, dtype=np.float64)[np.asarray(doc_indices, dtype=np.int64)]
    base = (w + m) * math.log2(w + m) - w * math.log2(w) - m * math.log2(m)
    return float(base - _xlog2x(u + j).sum() + _xlog2x(u).sum() + _xlog2x(j).sum())


def _joint_csr(matrix: SparseDocMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flatten the matrix into CSR arrays of per-document joint mass.

    data[k] = p(x) * p(y|x) for the k-th stored cell, with p(x) = 1/n.
    """
    n = matrix.n_docs
    indptr = np.zeros(n + 1, dtype=np.int64)
    for d, row in enumerate(matrix.rows):
        indptr[d + 1] = indptr[d] + len(row)
    nnz = int(indptr[-1])
    indices = np.empty(nnz, dtype=np.int64)
    data = np.empty(nnz, dtype=np.float64)
    pos = 0
    for d, row in enumerate(matrix.rows):
        total = sum(c for _, c in row)
        for idx, count in row:
            indices[pos] = idx
            data[pos] = (1.0 / n) * (count / total)
            pos += 1
    doc_mass = np.full(n, 1.0 / n, dtype=np.float64)
    return indptr, indices, data, doc_mass


@njit(cache=True)
def _sweep(indptr, indices, data, doc_mass, assignment, jointT, jlj, mass, order, costs):  # pragma: no cover
    # jointT is the cluster-term joint transposed to (term, cluster) so a
    # document's support walks contiguous rows; jlj caches x*log2(x) of it.
    n_changed = 0
    k = mass.shape[0]
    for oi in range(order.shape[0]):
        x = order[oi]
        t_old = assignment[x]
        s = indptr[x]
        e = indptr[x + 1]
        w = doc_mass[x]
        for p in range(s, e):
            v = indices[p]
            jy = jointT[v, t_old] - data[p]
            if jy < 0.0:
                jy = 0.0
            jointT[v, t_old] = jy
            jlj[v, t_old] = jy * np.log2(jy) if jy > 0.0 else 0.0
        mass[t_old] -= w
        if mass[t_old] < 0.0:
            mass[t_old] = 0.0
        w_log_w = w * np.log2(w)
        for t in range(k):
            mt = mass[t]
            costs[t] = (w + mt) * np.log2(w + mt) - w_log_w - mt * np.log2(mt) if mt > 0.0 else 0.0
        for p in range(s, e):
            v = indices[p]
            u = data[p]
            ulu = u * np.log2(u)
            for t in range(k):
                jy = jointT[v, t]
                # Support terms absent from a cluster contribute exactly
                # zero to its Jensen-Shannon sum; empty clusters stay at 0.
                if jy > 0.0 and mass[t] > 0.0:
                    tot = u + jy
                    costs[t] += ulu + jlj[v, t] - tot * np.log2(tot)
        best_t = 0
        best_cost = costs[0]
        for t in range(1, k):
            if costs[t] < best_cost:
                best_cost = costs[t]
                best_t = t
        for p in range(s, e):
            v = indices[p]
            jy = jointT[v, best_t] + data[p]
            jointT[v, best_t] = jy
            jlj[v, best_t] = jy * np.log2(jy)
        mass[best_t] += w
        if best_t != t_old:
            assignment[x] = best_t
            n_changed += 1
    return n_changed


def _rebuild_joint(indptr, indices, data, assignment, k, n_terms):
    joint = np.zeros((k, n_terms), dtype=np.float64)
    mass = np.zeros(k, dtype=np.float64)
    n = assignment.shape[0]
    for x in range(n):
        t = assignment[x]
        joint[t, indices[indptr[x] : indptr[x + 1]]] += data[indptr[x] : indptr[x + 1]]
    counts = np.bincount(assignment, minlength=k)
    mass[:] = counts / n
    return joint, mass


def _objective_bits(joint: np.ndarray, mass: np.ndarray, p_y: np.ndarray) -> float:
    denom = mass[:, None] * p_y[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(joint > 0, joint * np.log2(joint / denom), 0.0)
    return max(float(terms.sum()), 0.0)


def _own_cost(indptr, indices, data, doc_mass, joint, mass, x, t) -> float:
    """Merge cost of document x against its cluster t with x removed."""
    s, e = indptr[x], indptr[x + 1]
    w = float(doc_mass[x])
    m = float(mass[t]) - w
    if m <= 1e-15:
        return 0.0
    u = data[s:e]
    j = np.maximum(joint[t, indices[s:e]] - u, 0.0)
    base = (w + m) * math.log2(w + m) - w * math.log2(w) - m * math.log2(m)
    return float(base - _xlog2x(u + j).sum() + _xlog2x(u).sum() + _xlog2x(j).sum())


def _repair_empty_clusters(indptr, indices, data, doc_mass, assignment, joint, mass):
    k = mass.shape[0]
    counts = np.bincount(assignment, minlength=k)
    for t in range(k):
        while counts[t] == 0:
            best_x = -1
            best_cost = -1.0
            for x in range(assignment.shape[0]):
                if counts[assignment[x]] <= 1:
                    continue
                c = _own_cost(indptr, indices, data, doc_mass, joint, mass, x, assignment[x])
                if c > best_cost:
                    best_cost = c
                    best_x = x
            if best_x < 0:
                break
            t_old = assignment[best_x]
            s, e = indptr[best_x], indptr[best_x + 1]
            joint[t_old, indices[s:e]] -= data[s:e]
            np.maximum(joint[t_old], 0.0, out=joint[t_old])
            mass[t_old] -= doc_mass[best_x]
            joint[t, indices[s:e]] += data[s:e]
            mass[t] += doc_mass[best_x]
            assignment[best_x] = t
            counts[t_old] -= 1
            counts[t] += 1


def sib_cluster(
    matrix: SparseDocMatrix,
    params: SibParams,
    trace: list | None = None,
) -> Partition:
    """Cluster documents by sequential information-bottleneck sweeps.

    Runs ``params.restarts`` independent random initializations and returns
    the final state with the highest I(T;Y); ties keep the earliest restart.
    A sweep stops the run when fewer than ``convergence_fraction`` of the
    documents change cluster. If ``trace`` is a list, one dict per restart
    is appended with the per-sweep objective values (diagnostics only).
    """
    params.validate()
    n = matrix.n_docs
    if params.k > n:
        raise InputError(f"k={params.k} exceeds document count {n}", code="cluster.k-too-large")
    indptr, indices, data, doc_mass = _joint_csr(matrix)
    p_y = np.zeros(matrix.n_terms, dtype=np.float64)
    np.add.at(p_y, indices, data)

    best: tuple[float, np.ndarray] | None = None
    children = np.random.SeedSequence(params.seed).spawn(params.restarts)
    for r in range(params.restarts):
        rng = np.random.default_rng(children[r])
        assignment = rng.integers(0, params.k, size=n).astype(np.int64)
        joint, mass = _rebuild_joint(indptr, indices, data, assignment, params.k, matrix.n_terms)
        sweep_objs: list[float] = []
        costs = np.empty(params.k, dtype=np.float64)
        for _ in range(params.max_sweeps):
            order = rng.permutation(n).astype(np.int64)
            jointT = np.ascontiguousarray(joint.T)
            jlj = _xlog2x(jointT)
            n_changed = _sweep(
                indptr, indices, data, doc_mass, assignment, jointT, jlj, mass, order, costs
            )
            # Rebuild from scratch to cancel incremental float drift.
            joint, mass = _rebuild_joint(indptr, indices, data, assignment, params.k, matrix.n_terms)
            _repair_empty_clusters(indptr, indices, data, doc_mass, assignment, joint, mass)
            sweep_objs.append(_objective_bits(joint, mass, p_y))
            if n_changed / n < params.convergence_fraction:
                break
        objective = sweep_objs[-1] if sweep_objs else _objective_bits(joint, mass, p_y)
        if trace is not None:
            trace.append({"restart": r, "sweep_objectives": sweep_objs})
        if best is None or objective > best[0]:
            best = (objective, assignment.copy())

    assert best is not None
    objective, assignment = best
    joint, mass = _rebuild_joint(indptr, indices, data, assignment, params.k, matrix.n_terms)
    with np.errstate(divide="ignore", invalid="ignore"):
        centroid = np.where(mass[:, None] > 0, joint / np.where(mass[:, None] > 0, mass[:, None], 1.0), 0.0)
    return Partition(
        assignment=tuple(int(t) for t in assignment),
        cluster_mass=mass,
        cluster_centroid=centroid,
        objective=float(objective),
    )


def mutual_information(partition: Partition, matrix: SparseDocMatrix) -> float:
    """I(T;Y) in bits of a partition against the matrix it was built from."""
    if len(partition.assignment) != matrix.n_docs:
        raise InputError("partition length disagrees with matrix", code="cluster.bad-partition")
    indptr, indices, data, _ = _joint_csr(matrix)
    assignment = np.asarray(partition.assignment, dtype=np.int64)
    k = partition.k
    joint, mass = _rebuild_joint(indptr, indices, data, assignment, k, matrix.n_terms)
    p_y = np.zeros(matrix.n_terms, dtype=np.float64)
    np.add.at(p_y, indices, data)
    return _objective_bits(joint, mass, p_y)
