"""Shared synthetic fixtures for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from tsgraph.dataset import Dataset, TimeSeries
from tsgraph.embedding import EmbeddedGraph, Node


def sine_square_dataset(
    n_per_class: int = 20,
    n: int = 128,
    noise: float = 0.1,
    seed: int = 7,
    random_phase: bool = True,
) -> Dataset:
    """Two classes: noisy sines and noisy square waves of the same period."""
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    series, labels = [], []
    for i in range(n_per_class):
        phase = rng.uniform(0, 2 * np.pi) if random_phase else 0.0
        series.append(np.sin(2 * np.pi * 2 * t / n + phase) + rng.normal(0, noise, n))
        labels.append(0)
    for i in range(n_per_class):
        phase = rng.uniform(0, 2 * np.pi) if random_phase else 0.0
        series.append(
            np.sign(np.sin(2 * np.pi * 2 * t / n + phase)) + rng.normal(0, noise, n)
        )
        labels.append(1)
    return Dataset(
        series=tuple(TimeSeries(i, v) for i, v in enumerate(series)),
        true_labels=tuple(labels),
    )


def private_motif_dataset(n_per_class: int = 14, seed: int = 11) -> Dataset:
    """Three classes sharing a weak background, each with one private motif."""
    rng = np.random.default_rng(seed)
    n = 128
    t = np.arange(n)
    width = 48
    m = np.arange(width)
    motifs = [
        2.0 * (1 - np.abs(m - (width - 1) / 2) / ((width - 1) / 2)),  # triangle
        1.8 * np.sin(2 * np.pi * m / 6),                              # fast oscillation
        np.where((m // 12) % 2 == 0, 1.8, -1.8),                      # square steps
    ]
    series, labels = [], []
    for cls in range(3):
        for _ in range(n_per_class):
            base = 0.2 * np.sin(2 * np.pi * t / n) + rng.normal(0, 0.08, n)
            pos = rng.integers(24, 57)
            base[pos : pos + width] += motifs[cls]
            series.append(base)
            labels.append(cls)
    return Dataset(
        series=tuple(TimeSeries(i, v) for i, v in enumerate(series)),
        true_labels=tuple(labels),
    )


def graph_from_paths(paths: list[list[int]], length: int = 4) -> EmbeddedGraph:
    """Hand-built graph whose raw assignments equal the given collapsed paths.

    Node geometry is arbitrary (spread on the x axis); only connectivity and
    membership matter to feature/statistics tests.
    """
    node_ids = sorted({nid for path in paths for nid in path})
    nodes = tuple(
        Node(id=nid, angle_bin=0, radius=float(nid), x=float(nid), y=0.0, density=1.0)
        for nid in node_ids
    )
    edges: dict[tuple[int, int], int] = {}
    members: dict[int, list[tuple[int, int]]] = {nid: [] for nid in node_ids}
    for sid, path in enumerate(paths):
        for idx, nid in enumerate(path):
            members[nid].append((sid, idx))
        for pair in zip(path[:-1], path[1:]):
            edges[pair] = edges.get(pair, 0) + 1
    return EmbeddedGraph(
        length=length,
        nodes=nodes,
        edges=edges,
        node_sequences=tuple(tuple(p) for p in paths),
        node_members={nid: tuple(refs) for nid, refs in members.items()},
    )


@pytest.fixture
def two_blob_points() -> tuple[np.ndarray, np.ndarray]:
    """Two well-separated Gaussian blobs (distance 100 sigma) plus labels."""
    rng = np.random.default_rng(3)
    a = rng.normal(0.0, 1.0, size=(20, 5))
    b = rng.normal(100.0, 1.0, size=(20, 5))
    points = np.vstack([a, b])
    labels = np.array([0] * 20 + [1] * 20)
    return points, labels
