"""Cluster-discriminative structure: per-element crossing statistics,
length selection, and thresholded per-cluster subgraphs.

For a node (or edge) and a cluster, *representativity* is the share of the
cluster's series whose path crosses it, and *exclusivity* is the share of
all crossing series that belong to the cluster. Exclusivities of a crossed
element sum to 1 across clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import Partition
from .embedding import EmbeddedGraph
from .errors import ConfigError
from .metrics import ari


@dataclass(frozen=True)
class NodeClusterStats:
    node_id: int
    representativity: tuple[float, ...]
    exclusivity: tuple[float, ...]
    crossing_counts: tuple[int, ...]


@dataclass(frozen=True)
class EdgeClusterStats:
    edge: tuple[int, int]
    representativity: tuple[float, ...]
    exclusivity: tuple[float, ...]
    crossing_counts: tuple[int, ...]


@dataclass(frozen=True)
class GraphStats:
    """Crossing statistics for every node and edge of one graph."""

    k: int
    cluster_sizes: tuple[int, ...]
    nodes: dict[int, NodeClusterStats]
    edges: dict[tuple[int, int], EdgeClusterStats]


@dataclass(frozen=True)
class LengthScore:
    length: int
    consistency: float
    interpretability: float

    @property
    def product(self) -> float:
        return self.consistency * self.interpretability


@dataclass(frozen=True)
class ClusterSubgraph:
    """Nodes and edges of one cluster that clear the requested thresholds."""

    cluster_id: int
    kind: str  # "representative" | "exclusive" | "combined"
    min_representativity: float
    min_exclusivity: float
    node_ids: tuple[int, ...]
    edge_pairs: tuple[tuple[int, int], ...]


def _stats_arrays(
    crossings: dict, labels: np.ndarray, k: int, sizes: np.ndarray
) -> dict:
    out = {}
    for key, series_set in crossings.items():
        counts = np.zeros(k, dtype=np.int64)
        for sid in series_set:
            counts[labels[sid]] += 1
        total = int(counts.sum())
        rep = np.divide(counts, sizes, out=np.zeros(k), where=sizes > 0)
        excl = counts / total if total > 0 else np.zeros(k)
        out[key] = (tuple(rep), tuple(excl), tuple(int(c) for c in counts))
    return out


def node_stats(graph: EmbeddedGraph, labels: Partition) -> GraphStats:
    """Representativity, exclusivity, and crossing counts per node and per edge."""
    lab = labels.as_array()
    if lab.size != len(graph.node_sequences):
        raise ConfigError(
            f"{lab.size} labels for {len(graph.node_sequences)} series"
        )
    k = labels.k
    sizes = np.bincount(lab, minlength=k)

    node_crossings: dict[int, set[int]] = {nid: set() for nid in graph.node_members}
    edge_crossings: dict[tuple[int, int], set[int]] = {pair: set() for pair in graph.edges}
    for sid, path in enumerate(graph.node_sequences):
        for nid in set(path):
            node_crossings[nid].add(sid)
        for pair in set(zip(path[:-1], path[1:])):
            edge_crossings[pair].add(sid)

    node_arrays = _stats_arrays(node_crossings, lab, k, sizes)
    edge_arrays = _stats_arrays(edge_crossings, lab, k, sizes)
    return GraphStats(
        k=k,
        cluster_sizes=tuple(int(s) for s in sizes),
        nodes={
            nid: NodeClusterStats(nid, *node_arrays[nid]) for nid in sorted(node_arrays)
        },
        edges={
            pair: EdgeClusterStats(pair, *edge_arrays[pair])
            for pair in sorted(edge_arrays)
        },
    )


def consistency(final: Partition, per_length: Partition) -> float:
    """Agreement (ARI) between the final labels and one per-length partition."""
    return ari(final.labels, per_length.labels)


def interpretability_factor(graph: EmbeddedGraph, labels: Partition) -> float:
    """Mean over clusters of the best node exclusivity achieved for that cluster.

    Edge exclusivities do not enter; clusters with no members (or no
    exclusive node) contribute 0.
    """
    stats = node_stats(graph, labels)
    best = np.zeros(labels.k)
    for ns in stats.nodes.values():
        best = np.maximum(best, np.asarray(ns.exclusivity))
    return float(best.mean())


def select_length(scores: list[LengthScore]) -> int:
    """Length whose consistency * interpretability product is largest (ties: smallest)."""
    if not scores:
        raise ConfigError("no length scores to select from")
    best = None
    for score in sorted(scores, key=lambda s: s.length):
        if best is None or score.product > best.product:
            best = score
    return best.length


def cluster_subgraph(
    graph: EmbeddedGraph,
    stats: GraphStats,
    cluster_id: int,
    min_representativity: float,
    min_exclusivity: float,
    kind: str = "combined",
) -> ClusterSubgraph:
    """Filter one cluster's nodes and edges by inclusive thresholds.

    ``representative`` keeps elements with representativity >=
    ``min_representativity``; ``exclusive`` ditto for exclusivity;
    ``combined`` keeps the intersection.
    """
    if not 0 <= cluster_id < stats.k:
        raise ConfigError(f"unknown cluster id {cluster_id}")
    if kind not in ("representative", "exclusive", "combined"):
        raise ConfigError(f"unknown subgraph kind {kind!r}")
    for name, value in (("representativity", min_representativity),
                        ("exclusivity", min_exclusivity)):
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"min {name} must be in [0, 1], got {value}")

    def keep(rep: float, excl: float) -> bool:
        if kind == "representative":
            return rep >= min_representativity
        if kind == "exclusive":
            return excl >= min_exclusivity
        return rep >= min_representativity and excl >= min_exclusivity

    node_ids = tuple(
        nid
        for nid, ns in stats.nodes.items()
        if keep(ns.representativity[cluster_id], ns.exclusivity[cluster_id])
    )
    edge_pairs = tuple(
        pair
        for pair, es in stats.edges.items()
        if keep(es.representativity[cluster_id], es.exclusivity[cluster_id])
    )
    return ClusterSubgraph(
        cluster_id=cluster_id,
        kind=kind,
        min_representativity=min_representativity,
        min_exclusivity=min_exclusivity,
        node_ids=node_ids,
        edge_pairs=edge_pairs,
    )
