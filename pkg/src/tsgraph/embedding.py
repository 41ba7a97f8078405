"""Per-length graph construction: PCA projection, radial density nodes, transition edges.

Every subsequence of every series is z-normalized, projected to 2-D, and
assigned to its nearest node; consecutive distinct node assignments within a
series become directed, weighted edges. Construction is deterministic for a
fixed seed regardless of how many graphs are built concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, sliding_windows, znormalize_rows
from .errors import ConfigError, DataError

SQRT_2PI = math.sqrt(2.0 * math.pi)


class DegenerateProjectionError(DataError):
    """All projected points sit at the origin; no radial structure exists."""


@dataclass(frozen=True)
class EmbeddingParams:
    """Knobs for node extraction; defaults suit datasets up to a few thousand series."""

    sectors: int = 64
    min_density_frac: float = 0.1
    grid_size: int = 128
    bandwidth_floor: float = 1e-6
    fit_sample_cap: int = 10_000


@dataclass(frozen=True)
class Projection2D:
    """Rank-2 linear projection fitted to a sample of subsequence vectors.

    ``components`` rows are orthonormal; ``points`` holds the (x, y)
    coordinates of every vector the projection was fitted over.
    """

    mean: np.ndarray
    components: np.ndarray
    points: np.ndarray


@dataclass(frozen=True)
class Node:
    id: int
    angle_bin: int
    radius: float
    x: float
    y: float
    density: float

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class EmbeddedGraph:
    """Directed transition graph for one subsequence length.

    ``node_sequences`` holds each series' node path after collapsing runs of
    repeated assignments, so no self-loop can exist. ``node_members`` maps a
    node id to every raw (series_id, start) subsequence assigned to it.
    """

    length: int
    nodes: tuple[Node, ...]
    edges: dict[tuple[int, int], int]
    node_sequences: tuple[tuple[int, ...], ...]
    node_members: dict[int, tuple[tuple[int, int], ...]]

    def node_ids(self) -> list[int]:
        return [n.id for n in self.nodes]


def fit_projection(
    vectors: np.ndarray, length: int, seed: int, sample_cap: int = 10_000
) -> Projection2D:
    """Fit the top-2 principal directions of a set of z-normalized vectors.

    The fit is computed by SVD of the mean-centered sample; populations above
    ``sample_cap`` are subsampled uniformly (seeded) before fitting, but
    ``points`` always covers the full input. Each component is oriented so
    its largest-magnitude entry is positive, which pins node geometry across
    runs.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if length < 2:
        raise ConfigError(f"projection needs length >= 2, got {length}")
    if vectors.ndim != 2 or vectors.shape[1] != length:
        raise DataError(f"expected (m, {length}) vectors, got {vectors.shape}")
    if vectors.shape[0] < 3:
        raise DataError(f"projection needs >= 3 sample vectors, got {vectors.shape[0]}")

    sample = vectors
    if vectors.shape[0] > sample_cap:
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(vectors.shape[0], size=sample_cap, replace=False))
        sample = vectors[idx]

    mean = sample.mean(axis=0)
    centered = sample - mean
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:2].copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0

    points = (vectors - mean) @ components.T
    return Projection2D(mean=mean, components=components, points=points)


def project(projection: Projection2D, vectors: np.ndarray) -> np.ndarray:
    """Project one vector or a stack of vectors into the fitted 2-D space."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.shape[-1] != projection.mean.shape[0]:
        raise DataError(
            f"vector length {vectors.shape[-1]} != projection length {projection.mean.shape[0]}"
        )
    return (vectors - projection.mean) @ projection.components.T


def _gaussian_density(grid: np.ndarray, samples: np.ndarray, bandwidth: float) -> np.ndarray:
    z = (grid[:, None] - samples[None, :]) / bandwidth
    return np.exp(-0.5 * z * z).sum(axis=1) / (samples.size * bandwidth * SQRT_2PI)


def _strict_local_maxima(density: np.ndarray) -> list[int]:
    # Boundary points count with their single neighbor: a density peak at
    # radius 0 or at the outermost sample must still produce a node.
    idx = []
    last = density.size - 1
    for i in range(density.size):
        left_ok = i == 0 or density[i] > density[i - 1]
        right_ok = i == last or density[i] > density[i + 1]
        if left_ok and right_ok and not (i == 0 and i == last):
            idx.append(i)
    return idx


def radial_nodes(
    points: np.ndarray,
    sectors: int,
    min_density_frac: float = 0.1,
    grid_size: int = 128,
    bandwidth_floor: float = 1e-6,
    seed: int | None = None,
) -> tuple[Node, ...]:
    """Extract density-peak nodes via an angular sweep of the projected plane.

    The plane is split into ``sectors`` equal angular bins around the origin.
    Within each non-empty bin, a 1-D Gaussian KDE over point radii
    (bandwidth 1.06 * sigma * m^(-1/5), floored) is evaluated on a
    ``grid_size``-point grid from 0 to the bin's largest radius; every strict
    local maximum at least ``min_density_frac`` of the bin's peak density
    becomes a node on the bin's center ray.
    """
    del seed  # extraction is deterministic; kept for signature stability
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 1:
        raise DataError(f"expected (m, 2) points, got {points.shape}")
    if sectors < 4:
        raise ConfigError(f"need >= 4 angular sectors, got {sectors}")

    radius = np.hypot(points[:, 0], points[:, 1])
    if float(radius.max()) == 0.0:
        raise DegenerateProjectionError("all projected points at origin")

    theta = np.arctan2(points[:, 1], points[:, 0])
    width = 2.0 * np.pi / sectors
    bins = np.clip(((theta + np.pi) / width).astype(int), 0, sectors - 1)

    nodes: list[Node] = []
    for s in range(sectors):
        radii = radius[bins == s]
        if radii.size == 0:
            continue
        r_max = float(radii.max())
        if r_max == 0.0:
            continue  # all members at the origin: flat density, no strict peak
        sigma = float(radii.std())
        bandwidth = max(1.06 * sigma * radii.size ** (-1.0 / 5.0), bandwidth_floor)
        grid = np.linspace(0.0, r_max, grid_size)
        density = _gaussian_density(grid, radii, bandwidth)
        floor = min_density_frac * float(density.max())
        center = -np.pi + (s + 0.5) * width
        for i in _strict_local_maxima(density):
            if density[i] >= floor:
                r = float(grid[i])
                nodes.append(
                    Node(
                        id=len(nodes),
                        angle_bin=s,
                        radius=r,
                        x=r * math.cos(center),
                        y=r * math.sin(center),
                        density=float(density[i]),
                    )
                )

    if not nodes:
        # Degenerate float plateau in every populated sector: anchor one node
        # at the farthest point so downstream stages always have a target.
        j = int(np.argmax(radius))
        s = int(bins[j])
        center = -np.pi + (s + 0.5) * width
        r = float(radius[j])
        spike = 1.0 / (bandwidth_floor * SQRT_2PI)
        nodes.append(Node(0, s, r, r * math.cos(center), r * math.sin(center), spike))
    return tuple(nodes)


def assign_subsequences(points: np.ndarray, nodes: tuple[Node, ...]) -> np.ndarray:
    """Nearest-node id per point; exact distance ties go to the smallest node id."""
    if not nodes:
        raise DataError("cannot assign points without nodes")
    points = np.asarray(points, dtype=np.float64)
    positions = np.array([[n.x, n.y] for n in nodes])
    ids = np.array([n.id for n in nodes], dtype=np.int64)
    out = np.empty(points.shape[0], dtype=np.int64)
    step = 65_536  # bound the (chunk, nodes, 2) broadcast
    for lo in range(0, points.shape[0], step):
        chunk = points[lo : lo + step]
        d2 = ((chunk[:, None, :] - positions[None, :, :]) ** 2).sum(axis=2)
        out[lo : lo + step] = ids[np.argmin(d2, axis=1)]
    return out


def collapse_path(assignments: np.ndarray) -> tuple[int, ...]:
    """Merge consecutive duplicate node ids into a single visit."""
    path = []
    for node_id in assignments:
        if not path or path[-1] != node_id:
            path.append(int(node_id))
    return tuple(path)


def build_graph(
    dataset: Dataset,
    length: int,
    params: EmbeddingParams = EmbeddingParams(),
    seed: int = 0,
) -> EmbeddedGraph:
    """Build the transition graph for one subsequence length over a whole dataset."""
    if length > dataset.min_length:
        raise DataError(
            f"subsequence length {length} exceeds shortest series ({dataset.min_length})"
        )

    windows = []
    owners: list[tuple[int, int]] = []
    counts = []
    for ts in dataset.series:
        w = znormalize_rows(sliding_windows(ts.values, length))
        windows.append(w)
        owners.extend((ts.id, start) for start in range(w.shape[0]))
        counts.append(w.shape[0])
    stacked = np.vstack(windows)

    projection = fit_projection(stacked, length, seed=seed, sample_cap=params.fit_sample_cap)
    try:
        nodes = radial_nodes(
            projection.points,
            sectors=params.sectors,
            min_density_frac=params.min_density_frac,
            grid_size=params.grid_size,
            bandwidth_floor=params.bandwidth_floor,
        )
    except DegenerateProjectionError:
        # Single shared pattern (e.g. all-constant series): one node at the
        # origin keeps the path/feature contracts intact.
        spike = 1.0 / (params.bandwidth_floor * SQRT_2PI)
        nodes = (Node(id=0, angle_bin=0, radius=0.0, x=0.0, y=0.0, density=spike),)

    assigned = assign_subsequences(projection.points, nodes)

    members: dict[int, list[tuple[int, int]]] = {n.id: [] for n in nodes}
    for (series_id, start), node_id in zip(owners, assigned):
        members[int(node_id)].append((series_id, start))

    paths = []
    edges: dict[tuple[int, int], int] = {}
    offset = 0
    for c in counts:
        path = collapse_path(assigned[offset : offset + c])
        offset += c
        paths.append(path)
        for u, v in zip(path[:-1], path[1:]):
            edges[(u, v)] = edges.get((u, v), 0) + 1

    return EmbeddedGraph(
        length=length,
        nodes=nodes,
        edges=edges,
        node_sequences=tuple(paths),
        node_members={nid: tuple(refs) for nid, refs in members.items()},
    )


def graph_to_dict(graph: EmbeddedGraph, include_members: bool = False) -> dict:
    """JSON-ready form: nodes, weighted edges in (src, dst) order, per-series paths."""
    out = {
        "length": graph.length,
        "nodes": [
            {
                "id": n.id,
                "x": n.x,
                "y": n.y,
                "angle_bin": n.angle_bin,
                "radius": n.radius,
                "density": n.density,
            }
            for n in graph.nodes
        ],
        "edges": [
            {"src": u, "dst": v, "weight": w}
            for (u, v), w in sorted(graph.edges.items())
        ],
        "paths": [list(p) for p in graph.node_sequences],
    }
    if include_members:
        out["members"] = {
            str(nid): [[sid, start] for sid, start in refs]
            for nid, refs in sorted(graph.node_members.items())
        }
    return out
