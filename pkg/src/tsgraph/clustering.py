"""Per-graph features and k-means partitioning.

Each series is described by how often it crosses each node and traverses
each edge of a graph; both blocks are L1-normalized per row so series length
does not dominate. Partitions come from a seeded k-means++ / Lloyd loop
whose objective history is retained for verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .embedding import EmbeddedGraph
from .errors import ConfigError


@dataclass(frozen=True)
class Partition:
    """Cluster id per series, plus the subsequence length that produced it."""

    labels: tuple[int, ...]
    k: int
    length: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(c) for c in self.labels))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)


@dataclass(frozen=True)
class FeatureMatrix:
    """Series-by-(nodes ++ edges) crossing counts, L1-normalized per block."""

    data: np.ndarray
    node_columns: tuple[int, ...]
    edge_columns: tuple[tuple[int, int], ...]

    @property
    def column_index(self) -> list[tuple[str, object]]:
        return [("node", nid) for nid in self.node_columns] + [
            ("edge", pair) for pair in self.edge_columns
        ]


def _l1_normalize_rows(block: np.ndarray) -> np.ndarray:
    sums = block.sum(axis=1, keepdims=True)
    return np.divide(block, sums, out=np.zeros_like(block), where=sums > 0)


def feature_matrix_to_csv(fm: "FeatureMatrix") -> str:
    """Debug export: one row per series, columns named node:<id> / edge:<u>-><v>."""
    header = [f"node:{nid}" for nid in fm.node_columns] + [
        f"edge:{u}->{v}" for u, v in fm.edge_columns
    ]
    lines = [",".join(header)]
    for row in fm.data:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def features(graph: EmbeddedGraph, dataset: Dataset) -> FeatureMatrix:
    """Count node crossings and edge traversals per series, then normalize.

    Node counts come from raw subsequence assignments (``node_members``);
    edge counts from collapsed-path transitions. A series with no
    transitions keeps an all-zero edge block.
    """
    n = len(dataset)
    node_ids = sorted(graph.node_members)
    edge_pairs = sorted(graph.edges)
    node_col = {nid: j for j, nid in enumerate(node_ids)}
    edge_col = {pair: j for j, pair in enumerate(edge_pairs)}

    node_block = np.zeros((n, len(node_ids)))
    for nid, refs in graph.node_members.items():
        for series_id, _ in refs:
            node_block[series_id, node_col[nid]] += 1.0

    edge_block = np.zeros((n, len(edge_pairs)))
    for i, path in enumerate(graph.node_sequences):
        for pair in zip(path[:-1], path[1:]):
            edge_block[i, edge_col[pair]] += 1.0

    data = np.hstack([_l1_normalize_rows(node_block), _l1_normalize_rows(edge_block)])
    return FeatureMatrix(data=data, node_columns=tuple(node_ids), edge_columns=tuple(edge_pairs))


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    objective_history: tuple[float, ...] = field(default=())


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = (
        (points * points).sum(axis=1)[:, None]
        + (centers * centers).sum(axis=1)[None, :]
        - 2.0 * points @ centers.T
    )
    return np.maximum(d2, 0.0)

def _plus_plus_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    d2 = _squared_distances(points, centers[:1])[:, 0]
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))  # all remaining points coincide with a center
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[j] = points[idx]
        d2 = np.minimum(d2, _squared_distances(points, centers[j : j + 1])[:, 0])
    return centers


def _repair_empty(labels: np.ndarray, d2: np.ndarray, k: int) -> np.ndarray:
    """Give each empty cluster the point currently farthest from its centroid.

    Donors come only from clusters that keep at least one member, so a
    repair never creates a new empty cluster.
    """
    counts = np.bincount(labels, minlength=k)
    if counts.min() > 0:
        return labels
    labels = labels.copy()
    own = d2[np.arange(labels.size), labels].copy()
    for empty in np.flatnonzero(counts == 0):
        candidates = np.where(counts[labels] > 1, own, -np.inf)
        donor = int(np.argmax(candidates))
        counts[labels[donor]] -= 1
        counts[empty] += 1
        labels[donor] = empty
        own[donor] = -np.inf  # a stolen point cannot be stolen again
    return labels


def lloyd_kmeans(
    points: np.ndarray,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-4,
) -> KMeansResult:
    """Seeded k-means++ initialization followed by Lloyd iterations.

    Stops when the Frobenius norm of the centroid shift drops below ``tol``
    or after ``max_iter`` rounds. ``objective_history`` records the summed
    squared distance to assigned centroids after each round; it is
    non-increasing.
    """
    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ConfigError(f"k={k} outside [1, {n}]")

    rng = np.random.default_rng(seed)
    centroids = _plus_plus_init(points, k, rng)
    labels = np.zeros(n, dtype=np.int64)
    history: list[float] = []

    for _ in range(max_iter):
        d2 = _squared_distances(points, centroids)
        labels = np.argmin(d2, axis=1)
        labels = _repair_empty(labels, d2, k)
        new_centroids = np.empty_like(centroids)
        for j in range(k):
            new_centroids[j] = points[labels == j].mean(axis=0)
        objective = float(
            _squared_distances(points, new_centroids)[np.arange(n), labels].sum()
        )
        history.append(objective)
        shift = float(np.linalg.norm(new_centroids - centroids))
        centroids = new_centroids
        if shift < tol:
            break

    return KMeansResult(labels=labels, centroids=centroids, objective_history=tuple(history))


def _relabel_first_occurrence(labels: np.ndarray) -> list[int]:
    mapping: dict[int, int] = {}
    out = []
    for lab in labels:
        if int(lab) not in mapping:
            mapping[int(lab)] = len(mapping)
        out.append(mapping[int(lab)])
    return out


def kmeans(
    points: np.ndarray,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-4,
    length: int | None = None,
) -> Partition:
    """Cluster rows of ``points`` into ``k`` groups; labels renumbered by first occurrence."""
    result = lloyd_kmeans(points, k, seed=seed, max_iter=max_iter, tol=tol)
    return Partition(labels=tuple(_relabel_first_occurrence(result.labels)), k=k, length=length)


def partition_all(
    graphs: list[EmbeddedGraph],
    dataset: Dataset,
    k: int,
    seed: int,
) -> list[Partition]:
    """One k-means partition per graph, with independent per-graph seeds (seed + index)."""
    if not graphs:
        raise ConfigError("need at least one graph to partition")
    parts = []
    for i, graph in enumerate(graphs):
        fm = features(graph, dataset)
        parts.append(kmeans(fm.data, k, seed=seed + i, length=graph.length))
    return parts
