"""End-to-end run orchestration and the persisted run artifact.

A run is fully determined by its ``RunConfig``: stage seeds are derived by
hashing the base seed with a stage name (and subsequence length where
relevant), so re-running a config always produces a byte-identical
``artifact.json`` no matter how many workers execute the per-length stages.
Wall-clock timings go to a separate ``timings.json`` sidecar to keep the
artifact deterministic.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .clustering import Partition, feature_matrix_to_csv, features, kmeans
from .consensus import ConsensusMatrix, consensus_matrix, spectral_cluster
from .dataset import Dataset, candidate_lengths, load_dataset
from .embedding import EmbeddedGraph, EmbeddingParams, build_graph, graph_to_dict
from .errors import ConfigError
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
from .metrics import all_scores, baseline_kmeans

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    dataset_path: str
    k: int
    format: str = "ucr-tsv"
    m: int = 10
    seed: int = 42
    sectors: int = 64
    min_density_frac: float = 0.1
    min_representativity: float = 0.8
    min_exclusivity: float = 0.8
    out_dir: str | None = None
    dump_features: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.m < 1:
            raise ConfigError(f"m must be >= 1, got {self.m}")
        if self.sectors < 4:
            raise ConfigError(f"sectors must be >= 4, got {self.sectors}")
        for name in ("min_density_frac", "min_representativity", "min_exclusivity"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class RunArtifact:
    config: RunConfig
    dataset: Dataset
    dataset_name: str
    lengths: list[int]
    graphs: list[EmbeddedGraph]
    partitions: list[Partition]
    consensus: ConsensusMatrix
    final: Partition
    length_scores: list[LengthScore]
    selected_length: int
    selected_stats: GraphStats
    subgraphs: list[ClusterSubgraph]
    baseline: Partition
    scores: dict[str, dict[str, float] | None]
    feature_shapes: list[dict[str, int]]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def selected_graph(self) -> EmbeddedGraph:
        return self.graphs[self.lengths.index(self.selected_length)]


def stage_seed(base: int, stage: str, length: int | None = None) -> int:
    """Stable per-stage seed: sha256 of base seed, stage name, and length."""
    tag = f"{base}|{stage}|{'' if length is None else length}"
    return int.from_bytes(hashlib.sha256(tag.encode()).digest()[:8], "big") % (2**63)


def _stage(timings: dict[str, float], name: str, fn, *args, **kwargs):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kwargs)
    except ConfigError:
        raise
    except Exception as exc:
        raise RuntimeError(f"stage {name!r} failed: {exc}") from exc
    finally:
        timings[name] = timings.get(name, 0.0) + (time.perf_counter() - t0)


def run(config: RunConfig, workers: int = 1) -> RunArtifact:
    """Execute the full pipeline and, if configured, persist the artifact."""
    timings: dict[str, float] = {}
    t_start = time.perf_counter()

    dataset = _stage(timings, "load", load_dataset, config.dataset_path, config.format)
    if config.k > len(dataset):
        raise ConfigError(f"k={config.k} exceeds dataset size {len(dataset)}")

    lengths = _stage(timings, "lengths", candidate_lengths, dataset, config.m)
    params = EmbeddingParams(
        sectors=config.sectors, min_density_frac=config.min_density_frac
    )

    def embed(length: int) -> EmbeddedGraph:
        return build_graph(
            dataset, length, params, seed=stage_seed(config.seed, "embed", length)
        )

    partition_seed = stage_seed(config.seed, "partition")

    def partition_one(item: tuple[int, EmbeddedGraph]) -> tuple[Partition, tuple[int, int]]:
        i, graph = item
        fm = features(graph, dataset)
        if config.dump_features and config.out_dir is not None:
            out = Path(config.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"features_l{graph.length}.csv").write_text(feature_matrix_to_csv(fm))
        part = kmeans(fm.data, config.k, seed=partition_seed + i, length=graph.length)
        return part, (len(fm.node_columns), len(fm.edge_columns))

    t0 = time.perf_counter()
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                graphs = list(pool.map(embed, lengths))
                per_length = list(pool.map(partition_one, enumerate(graphs)))
        else:
            graphs = [embed(length) for length in lengths]
            per_length = [partition_one(item) for item in enumerate(graphs)]
    except ConfigError:
        raise
    except Exception as exc:
        raise RuntimeError(f"stage 'embed+partition' failed: {exc}") from exc
    timings["embed+partition"] = time.perf_counter() - t0

    partitions = [part for part, _ in per_length]
    feature_shapes = [
        {
            "length": graph.length,
            "rows": len(dataset),
            "node_columns": shape[0],
            "edge_columns": shape[1],
        }
        for graph, (_, shape) in zip(graphs, per_length)
    ]

    consensus = _stage(timings, "consensus", consensus_matrix, partitions)
    final = _stage(
        timings,
        "spectral",
        spectral_cluster,
        consensus,
        config.k,
        stage_seed(config.seed, "spectral"),
    )

    def score_one(item: tuple[EmbeddedGraph, Partition]) -> LengthScore:
        graph, part = item
        return LengthScore(
            length=graph.length,
            consistency=consistency(final, part),
            interpretability=interpretability_factor(graph, final),
        )

    length_scores = _stage(
        timings, "scores", lambda: [score_one(it) for it in zip(graphs, partitions)]
    )
    selected = select_length(length_scores)
    selected_graph = graphs[lengths.index(selected)]
    stats = _stage(timings, "stats", node_stats, selected_graph, final)

    subgraphs = [
        cluster_subgraph(
            selected_graph,
            stats,
            cluster_id,
            config.min_representativity,
            config.min_exclusivity,
            kind,
        )
        for cluster_id in range(config.k)
        for kind in ("representative", "exclusive", "combined")
    ]

    baseline = _stage(
        timings,
        "baseline",
        baseline_kmeans,
        dataset,
        config.k,
        stage_seed(config.seed, "baseline"),
    )

    scores: dict[str, dict[str, float] | None] = {"graph": None, "baseline": None}
    if dataset.true_labels is not None:
        scores["graph"] = all_scores(final.labels, dataset.true_labels)
        scores["baseline"] = all_scores(baseline.labels, dataset.true_labels)

    timings["total"] = time.perf_counter() - t_start
    artifact = RunArtifact(
        config=config,
        dataset=dataset,
        dataset_name=Path(config.dataset_path).stem,
        lengths=list(lengths),
        graphs=graphs,
        partitions=partitions,
        consensus=consensus,
        final=final,
        length_scores=length_scores,
        selected_length=selected,
        selected_stats=stats,
        subgraphs=subgraphs,
        baseline=baseline,
        scores=scores,
        feature_shapes=feature_shapes,
        timings=timings,
    )
    if config.out_dir is not None:
        write_artifact(artifact, config.out_dir)
    return artifact


def artifact_to_dict(artifact: RunArtifact) -> dict:
    """Deterministic JSON form of a run (timings deliberately excluded)."""
    stats = artifact.selected_stats
    return {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(artifact.config),
        "dataset": {
            "name": artifact.dataset_name,
            "n_series": len(artifact.dataset),
            "k": artifact.config.k,
            "true_labels": (
                list(artifact.dataset.true_labels)
                if artifact.dataset.true_labels is not None
                else None
            ),
            "series": [ts.values.tolist() for ts in artifact.dataset.series],
        },
        "lengths": [
            {"l": s.length, "wc": s.consistency, "we": s.interpretability, "product": s.product}
            for s in artifact.length_scores
        ],
        "graphs": [graph_to_dict(g) for g in artifact.graphs],
        "partitions": [
            {"length": p.length, "labels": list(p.labels)} for p in artifact.partitions
        ],
        "consensus_matrix": [float(x) for x in artifact.consensus.values.ravel()],
        "final_labels": list(artifact.final.labels),
        "selected_length": artifact.selected_length,
        "node_stats": [
            {
                "id": ns.node_id,
                "representativity": list(ns.representativity),
                "exclusivity": list(ns.exclusivity),
                "crossing_counts": list(ns.crossing_counts),
            }
            for ns in stats.nodes.values()
        ],
        "edge_stats": [
            {
                "src": es.edge[0],
                "dst": es.edge[1],
                "representativity": list(es.representativity),
                "exclusivity": list(es.exclusivity),
                "crossing_counts": list(es.crossing_counts),
            }
            for es in stats.edges.values()
        ],
        "node_members": {
            str(nid): [[sid, start] for sid, start in refs]
            for nid, refs in sorted(artifact.selected_graph.node_members.items())
        },
        "cluster_subgraphs": [
            {
                "cluster": sg.cluster_id,
                "kind": sg.kind,
                "min_representativity": sg.min_representativity,
                "min_exclusivity": sg.min_exclusivity,
                "nodes": list(sg.node_ids),
                "edges": [list(pair) for pair in sg.edge_pairs],
            }
            for sg in artifact.subgraphs
        ],
        "baseline_labels": list(artifact.baseline.labels),
        "metrics": artifact.scores,
        "feature_shapes": artifact.feature_shapes,
    }


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def write_artifact(artifact: RunArtifact, out_dir: str | Path) -> Path:
    """Write artifact.json (deterministic) plus a timings.json sidecar."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "artifact.json"
    path.write_text(canonical_json(artifact_to_dict(artifact)))
    (out / "timings.json").write_text(
        json.dumps(artifact.timings, sort_keys=True, indent=2) + "\n"
    )
    return path
