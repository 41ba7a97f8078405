"""Graph-based time series clustering with interpretable per-cluster subgraphs."""

from .clustering import FeatureMatrix, Partition, features, kmeans, partition_all
from .consensus import ConsensusMatrix, consensus_matrix, spectral_cluster
from .dataset import (
    Dataset,
    Subsequence,
    TimeSeries,
    candidate_lengths,
    extract_subsequences,
    load_dataset,
    save_dataset,
    sliding_windows,
    znormalize,
    znormalize_rows,
)
from .embedding import (
    EmbeddedGraph,
    EmbeddingParams,
    Node,
    Projection2D,
    assign_subsequences,
    build_graph,
    fit_projection,
    project,
    radial_nodes,
)
from .errors import ConfigError, DataError, TsGraphError
from .interpret import (
    ClusterSubgraph,
    GraphStats,
    LengthScore,
    cluster_subgraph,
    consistency,
    interpretability_factor,
    node_stats,
    select_length,
)
from .metrics import all_scores, ari, baseline_kmeans, nmi, purity, rand_index
from .runner import RunArtifact, RunConfig, run, write_artifact

__version__ = "0.1.0"

__all__ = [
    "ClusterSubgraph",
    "ConfigError",
    "ConsensusMatrix",
    "DataError",
    "Dataset",
    "EmbeddedGraph",
    "EmbeddingParams",
    "FeatureMatrix",
    "GraphStats",
    "LengthScore",
    "Node",
    "Partition",
    "Projection2D",
    "RunArtifact",
    "RunConfig",
    "Subsequence",
    "TimeSeries",
    "TsGraphError",
    "all_scores",
    "ari",
    "assign_subsequences",
    "baseline_kmeans",
    "build_graph",
    "candidate_lengths",
    "cluster_subgraph",
    "consensus_matrix",
    "consistency",
    "extract_subsequences",
    "features",
    "fit_projection",
    "interpretability_factor",
    "kmeans",
    "load_dataset",
    "nmi",
    "node_stats",
    "partition_all",
    "project",
    "purity",
    "radial_nodes",
    "rand_index",
    "run",
    "save_dataset",
    "select_length",
    "sliding_windows",
    "spectral_cluster",
    "znormalize",
    "znormalize_rows",
    "write_artifact",
]
