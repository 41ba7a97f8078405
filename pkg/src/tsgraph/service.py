"""Read-only HTTP API over run artifacts for the interactive explorer.

The service never mutates artifacts; responses are pure functions of the
artifact JSON plus query parameters, so repeated requests are byte-identical.
Every endpoint declares a response model, so responses are validated against
the schema published at /openapi.json. Artifacts are discovered as
``<dir>/*.json`` or ``<dir>/<run>/artifact.json`` and cached in memory on
first access.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

MAX_DISPLAY_POINTS = 1024


class RunSummary(BaseModel):
    id: str
    dataset: str
    k: int
    n_series: int
    selected_length: int
    ari: float | None
    baseline_ari: float | None


class NodeView(BaseModel):
    id: int
    x: float
    y: float
    angle_bin: int
    radius: float
    density: float
    member_count: int
    cluster: int
    colored: bool
    representativity: list[float]
    exclusivity: list[float]
    crossing_counts: list[int]


class EdgeView(BaseModel):
    src: int
    dst: int
    weight: int
    cluster: int
    colored: bool
    representativity: list[float]
    exclusivity: list[float]
    crossing_counts: list[int]


class GraphView(BaseModel):
    id: str
    length: int
    min_representativity: float = Field(alias="lambda")
    min_exclusivity: float = Field(alias="gamma")
    k: int
    nodes: list[NodeView]
    edges: list[EdgeView]


class MemberView(BaseModel):
    series_id: int
    start: int
    length: int


class NodeDetailView(BaseModel):
    id: int
    length: int
    members: list[MemberView]
    representativity: list[float]
    exclusivity: list[float]
    crossing_counts: list[int]


class GroupsView(BaseModel):
    graph: list[list[int]]
    baseline: list[list[int]]
    truth: list[list[int]] | None


class LabelsView(BaseModel):
    graph: list[int]
    baseline: list[int]
    truth: list[int] | None


class SeriesView(BaseModel):
    id: int
    n: int
    values: list[float]


class ClustersView(BaseModel):
    id: str
    groups: GroupsView
    labels: LabelsView
    series: list[SeriesView]
    metrics: dict[str, dict[str, float] | None]


class LengthScoreView(BaseModel):
    l: int
    wc: float
    we: float
    product: float


class FeatureShapeView(BaseModel):
    length: int
    rows: int
    node_columns: int
    edge_columns: int


class UnderhoodView(BaseModel):
    id: str
    length_scores: list[LengthScoreView]
    selected_length: int
    n_series: int
    consensus_matrix: list[float]
    final_labels: list[int]
    feature_shapes: list[FeatureShapeView]


def downsample(values: list[float], limit: int = MAX_DISPLAY_POINTS) -> list[float]:
    """Uniformly thin a series to at most ``limit`` points, keeping both endpoints."""
    n = len(values)
    if n <= limit:
        return list(values)
    idx = np.unique(np.linspace(0, n - 1, limit).round().astype(int))
    return [values[i] for i in idx]


def argmax_exclusivity(exclusivity: list[float]) -> int:
    return int(np.argmax(exclusivity))


def is_colored(
    representativity: list[float],
    exclusivity: list[float],
    min_representativity: float,
    min_exclusivity: float,
) -> tuple[bool, int]:
    """Coloring rule for graph elements: thresholds apply to the element's
    argmax-exclusivity cluster."""
    cluster = argmax_exclusivity(exclusivity)
    colored = (
        representativity[cluster] >= min_representativity
        and exclusivity[cluster] >= min_exclusivity
    )
    return colored, cluster


class ArtifactStore:
    """Lazy, thread-safe artifact cache keyed by run id."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._cache: dict[str, dict] = {}
        self._lock = threading.Lock()

    def _discover(self) -> dict[str, Path]:
        found: dict[str, Path] = {}
        if not self.root.is_dir():
            return found
        for path in sorted(self.root.glob("*.json")):
            found[path.stem] = path
        for path in sorted(self.root.glob("*/artifact.json")):
            found.setdefault(path.parent.name, path)
        return found

    def _load(self, run_id: str, path: Path) -> dict | None:
        with self._lock:
            if run_id in self._cache:
                return self._cache[run_id]
            try:
                payload = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                logger.warning("skipping unreadable artifact %s: %s", path, exc)
                return None
            if not isinstance(payload, dict) or "schema_version" not in payload:
                logger.warning("skipping %s: not a run artifact", path)
                return None
            self._cache[run_id] = payload
            return payload

    def list_runs(self) -> list[tuple[str, dict]]:
        runs = []
        for run_id, path in self._discover().items():
            payload = self._load(run_id, path)
            if payload is not None:
                runs.append((run_id, payload))
        return runs

    def get(self, run_id: str) -> dict:
        path = self._discover().get(run_id)
        payload = self._load(run_id, path) if path is not None else None
        if payload is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        return payload


def _selected_graph(artifact: dict) -> dict:
    selected = artifact["selected_length"]
    for graph in artifact["graphs"]:
        if graph["length"] == selected:
            return graph
    raise HTTPException(status_code=500, detail="artifact missing selected graph")


def _group_by_label(labels: list[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for sid, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(sid)
    return [groups[lab] for lab in sorted(groups)]


def create_app(artifacts_dir: str | Path) -> FastAPI:
    store = ArtifactStore(artifacts_dir)
    app = FastAPI(title="tsgraph explorer", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.get("/api/runs", response_model=list[RunSummary])
    def list_runs():
        out = []
        for run_id, artifact in store.list_runs():
            metrics = artifact.get("metrics") or {}
            graph_scores = metrics.get("graph") or {}
            baseline_scores = metrics.get("baseline") or {}
            out.append(
                {
                    "id": run_id,
                    "dataset": artifact["dataset"]["name"],
                    "k": artifact["dataset"]["k"],
                    "n_series": artifact["dataset"]["n_series"],
                    "selected_length": artifact["selected_length"],
                    "ari": graph_scores.get("ari"),
                    "baseline_ari": baseline_scores.get("ari"),
                }
            )
        return out

    @app.get("/api/runs/{run_id}/graph", response_model=GraphView)
    def graph_view(
        run_id: str,
        min_representativity: float = Query(default=0.8, alias="lambda"),
        min_exclusivity: float = Query(default=0.8, alias="gamma"),
    ):
        for name, value in (("lambda", min_representativity), ("gamma", min_exclusivity)):
            if not 0.0 <= value <= 1.0:
                raise HTTPException(
                    status_code=400, detail=f"{name} must be in [0, 1], got {value}"
                )
        artifact = store.get(run_id)
        graph = _selected_graph(artifact)
        members = artifact["node_members"]
        node_stats = {ns["id"]: ns for ns in artifact["node_stats"]}
        edge_stats = {(es["src"], es["dst"]): es for es in artifact["edge_stats"]}

        nodes = []
        for node in graph["nodes"]:
            ns = node_stats[node["id"]]
            colored, cluster = is_colored(
                ns["representativity"],
                ns["exclusivity"],
                min_representativity,
                min_exclusivity,
            )
            nodes.append(
                {
                    **node,
                    "member_count": len(members.get(str(node["id"]), [])),
                    "cluster": cluster,
                    "colored": colored,
                    "representativity": ns["representativity"],
                    "exclusivity": ns["exclusivity"],
                    "crossing_counts": ns["crossing_counts"],
                }
            )
        edges = []
        for edge in graph["edges"]:
            es = edge_stats[(edge["src"], edge["dst"])]
            colored, cluster = is_colored(
                es["representativity"],
                es["exclusivity"],
                min_representativity,
                min_exclusivity,
            )
            edges.append(
                {
                    **edge,
                    "cluster": cluster,
                    "colored": colored,
                    "representativity": es["representativity"],
                    "exclusivity": es["exclusivity"],
                    "crossing_counts": es["crossing_counts"],
                }
            )
        return {
            "id": run_id,
            "length": graph["length"],
            "lambda": min_representativity,
            "gamma": min_exclusivity,
            "k": artifact["dataset"]["k"],
            "nodes": nodes,
            "edges": edges,
        }

    @app.get("/api/runs/{run_id}/node/{node_id}", response_model=NodeDetailView)
    def node_detail(run_id: str, node_id: int):
        artifact = store.get(run_id)
        members = artifact["node_members"].get(str(node_id))
        if members is None:
            raise HTTPException(status_code=404, detail=f"unknown node {node_id}")
        stats = next(ns for ns in artifact["node_stats"] if ns["id"] == node_id)
        length = artifact["selected_length"]
        return {
            "id": node_id,
            "length": length,
            "members": [
                {"series_id": sid, "start": start, "length": length}
                for sid, start in members
            ],
            "representativity": stats["representativity"],
            "exclusivity": stats["exclusivity"],
            "crossing_counts": stats["crossing_counts"],
        }

    @app.get("/api/runs/{run_id}/clusters", response_model=ClustersView)
    def clusters_view(run_id: str):
        artifact = store.get(run_id)
        truth = artifact["dataset"]["true_labels"]
        return {
            "id": run_id,
            "groups": {
                "graph": _group_by_label(artifact["final_labels"]),
                "baseline": _group_by_label(artifact["baseline_labels"]),
                "truth": _group_by_label(truth) if truth is not None else None,
            },
            "labels": {
                "graph": artifact["final_labels"],
                "baseline": artifact["baseline_labels"],
                "truth": truth,
            },
            "series": [
                {"id": sid, "n": len(values), "values": downsample(values)}
                for sid, values in enumerate(artifact["dataset"]["series"])
            ],
            "metrics": artifact["metrics"],
        }

    @app.get("/api/runs/{run_id}/underhood", response_model=UnderhoodView)
    def underhood_view(run_id: str):
        artifact = store.get(run_id)
        return {
            "id": run_id,
            "length_scores": artifact["lengths"],
            "selected_length": artifact["selected_length"],
            "n_series": artifact["dataset"]["n_series"],
            "consensus_matrix": artifact["consensus_matrix"],
            "final_labels": artifact["final_labels"],
            "feature_shapes": artifact["feature_shapes"],
        }

    return app
