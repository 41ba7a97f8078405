"""Consensus of per-length partitions and the final spectral assignment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import Partition, kmeans
from .errors import ConfigError, DataError

DEGREE_FLOOR = 1e-12


@dataclass(frozen=True)
class ConsensusMatrix:
    """Pairwise co-clustering frequency across partitions: symmetric, unit
    diagonal, every entry a multiple of 1 / n_partitions."""

    values: np.ndarray
    n_partitions: int

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DataError(f"consensus matrix must be square, got {v.shape}")
        if not np.array_equal(v, v.T):
            raise DataError("consensus matrix not symmetric")
        if not np.all(np.diagonal(v) == 1.0):
            raise DataError("consensus diagonal must be exactly 1")
        if v.min() < 0.0 or v.max() > 1.0:
            raise DataError("consensus entries must lie in [0, 1]")
        scaled = v * self.n_partitions
        if not np.allclose(scaled, np.round(scaled), atol=1e-9):
            raise DataError("consensus entries must be multiples of 1/n_partitions")

    @property
    def size(self) -> int:
        return int(self.values.shape[0])


def consensus_matrix(partitions: list[Partition]) -> ConsensusMatrix:
    """Fraction of partitions in which each series pair shares a cluster."""
    if not partitions:
        raise ConfigError("need at least one partition")
    n = len(partitions[0].labels)
    for p in partitions:
        if len(p.labels) != n:
            raise DataError(
                f"partition length mismatch: {len(p.labels)} vs {n}"
            )
    counts = np.zeros((n, n), dtype=np.int64)
    for p in partitions:
        labels = p.as_array()
        counts += labels[:, None] == labels[None, :]
    m = len(partitions)
    return ConsensusMatrix(values=counts / m, n_partitions=m)


def normalized_laplacian(affinity: np.ndarray) -> np.ndarray:
    """Symmetric normalized Laplacian I - D^(-1/2) A D^(-1/2), degrees floored."""
    degrees = np.maximum(affinity.sum(axis=1), DEGREE_FLOOR)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    return np.eye(affinity.shape[0]) - inv_sqrt[:, None] * affinity * inv_sqrt[None, :]


def spectral_embedding(affinity: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-normalized eigenvectors of the k smallest Laplacian eigenvalues.

    Returns (embedding, eigenvalues). All-zero embedding rows (series never
    co-clustered with anything) are left as zero.
    """
    lap = normalized_laplacian(affinity)
    eigenvalues, eigenvectors = np.linalg.eigh(lap)
    basis = eigenvectors[:, :k]
    norms = np.linalg.norm(basis, axis=1, keepdims=True)
    embedding = np.divide(basis, norms, out=np.zeros_like(basis), where=norms > 0)
    return embedding, eigenvalues[:k]


def spectral_cluster(matrix: ConsensusMatrix, k: int, seed: int) -> Partition:
    """Final labels: spectral clustering of the consensus matrix as an affinity."""
    if k > matrix.size:
        raise ConfigError(f"k={k} exceeds {matrix.size} series")
    embedding, _ = spectral_embedding(matrix.values, k)
    return kmeans(embedding, k, seed=seed)
