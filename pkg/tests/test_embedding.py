import numpy as np
import pytest

from tsgraph.dataset import Dataset, TimeSeries
from tsgraph.embedding import (
    DegenerateProjectionError,
    EmbeddingParams,
    Node,
    assign_subsequences,
    build_graph,
    collapse_path,
    fit_projection,
    graph_to_dict,
    project,
    radial_nodes,
)
from tsgraph.errors import ConfigError, DataError

from conftest import sine_square_dataset


def random_vectors(m=500, length=16, seed=0):
    return np.random.default_rng(seed).normal(size=(m, length))


def test_components_orthonormal():
    proj = fit_projection(random_vectors(), 16, seed=0)
    pc1, pc2 = proj.components
    assert abs(np.dot(pc1, pc2)) < 1e-8
    assert abs(np.linalg.norm(pc1) - 1.0) < 1e-8
    assert abs(np.linalg.norm(pc2) - 1.0) < 1e-8


def test_projected_sample_centered():
    proj = fit_projection(random_vectors(), 16, seed=0)
    assert np.all(np.abs(proj.points.mean(axis=0)) < 1e-8)


def test_rank_one_data_recovered():
    rng = np.random.default_rng(1)
    direction = rng.normal(size=8)
    direction /= np.linalg.norm(direction)
    t = rng.normal(size=200)
    vectors = t[:, None] * direction[None, :]
    proj = fit_projection(vectors, 8, seed=0)
    assert abs(abs(np.dot(proj.components[0], direction)) - 1.0) < 1e-8
    assert np.var(proj.points[:, 1]) < 1e-16


def test_project_mean_is_origin():
    vectors = random_vectors(50, 8, seed=2)
    proj = fit_projection(vectors, 8, seed=0)
    np.testing.assert_allclose(project(proj, proj.mean), [0.0, 0.0], atol=1e-12)


def test_project_unit_component_offset():
    vectors = random_vectors(50, 8, seed=3)
    proj = fit_projection(vectors, 8, seed=0)
    xy = project(proj, proj.mean + proj.components[0])
    np.testing.assert_allclose(xy, [1.0, 0.0], atol=1e-10)


def test_projection_is_contraction():
    vectors = random_vectors(100, 12, seed=4)
    proj = fit_projection(vectors, 12, seed=0)
    for v in vectors[:20]:
        assert np.linalg.norm(project(proj, v)) <= np.linalg.norm(v - proj.mean) + 1e-12


def test_variance_ordering_against_random_directions():
    vectors = random_vectors(500, 16, seed=5)
    proj = fit_projection(vectors, 16, seed=0)
    centered = vectors - proj.mean
    var1 = np.var(proj.points[:, 0])
    var2 = np.var(proj.points[:, 1])
    assert var1 >= var2
    rng = np.random.default_rng(6)
    pc1 = proj.components[0]
    for _ in range(1000):
        d = rng.normal(size=16)
        d /= np.linalg.norm(d)
        assert var1 + 1e-10 >= np.var(centered @ d)
        d_perp = d - np.dot(d, pc1) * pc1
        norm = np.linalg.norm(d_perp)
        if norm > 1e-12:
            assert var2 + 1e-10 >= np.var(centered @ (d_perp / norm))


def test_sign_convention():
    for seed in range(5):
        proj = fit_projection(random_vectors(seed=seed), 16, seed=0)
        for comp in proj.components:
            assert comp[np.argmax(np.abs(comp))] > 0


def test_fit_projection_subsample_deterministic():
    vectors = random_vectors(11_000, 4, seed=7)
    a = fit_projection(vectors, 4, seed=42)
    b = fit_projection(vectors, 4, seed=42)
    np.testing.assert_array_equal(a.components, b.components)
    np.testing.assert_array_equal(a.points, b.points)
    assert a.points.shape == (11_000, 2)


def test_fit_projection_errors():
    with pytest.raises(ConfigError):
        fit_projection(np.zeros((10, 1)), 1, seed=0)
    with pytest.raises(DataError, match=">= 3"):
        fit_projection(np.zeros((2, 5)), 5, seed=0)
    proj = fit_projection(random_vectors(10, 6, seed=8), 6, seed=0)
    with pytest.raises(DataError, match="length"):
        project(proj, np.zeros(7))


def test_radial_nodes_single_point_cluster():
    points = np.tile([1.0, 0.0], (50, 1))
    nodes = radial_nodes(points, sectors=8)
    assert len(nodes) == 1
    assert nodes[0].radius == pytest.approx(1.0)
    assert nodes[0].density > 0


def test_radial_nodes_two_radii_in_one_sector():
    rng = np.random.default_rng(9)
    angles = rng.uniform(0.25, 0.35, 400)
    radii = np.concatenate([rng.normal(1.0, 0.02, 200), rng.normal(3.0, 0.02, 200)])
    points = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    nodes = radial_nodes(points, sectors=8)
    assert len(nodes) == 2
    found = sorted(n.radius for n in nodes)
    grid_step = max(radii) / 127
    assert abs(found[0] - 1.0) <= 2 * grid_step + 0.06  # cluster spread
    assert abs(found[1] - 3.0) <= 2 * grid_step + 0.06


def test_radial_nodes_ring_covers_all_sectors():
    rng = np.random.default_rng(10)
    theta = rng.uniform(-np.pi, np.pi, 1000)
    points = np.column_stack([np.cos(theta), np.sin(theta)])
    nodes = radial_nodes(points, sectors=8)
    assert {n.angle_bin for n in nodes} == set(range(8))


def test_radial_nodes_density_threshold_prunes_minor_peaks():
    rng = np.random.default_rng(11)
    angles = rng.uniform(0.25, 0.35, 220)
    radii = np.concatenate([rng.normal(1.0, 0.02, 200), rng.normal(3.0, 0.02, 20)])
    points = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    permissive = radial_nodes(points, sectors=8, min_density_frac=0.01)
    strict = radial_nodes(points, sectors=8, min_density_frac=0.5)
    assert len(permissive) == 2
    assert len(strict) == 1
    assert strict[0].radius == pytest.approx(1.0, abs=0.1)


def test_radial_nodes_errors():
    with pytest.raises(DegenerateProjectionError):
        radial_nodes(np.zeros((10, 2)), sectors=8)
    with pytest.raises(ConfigError):
        radial_nodes(np.ones((10, 2)), sectors=3)
    with pytest.raises(DataError):
        radial_nodes(np.zeros((0, 2)), sectors=8)


def test_node_ids_unique_and_positions_on_center_rays():
    rng = np.random.default_rng(12)
    points = rng.normal(size=(500, 2))
    nodes = radial_nodes(points, sectors=16)
    ids = [n.id for n in nodes]
    assert ids == sorted(set(ids))
    width = 2 * np.pi / 16
    for n in nodes:
        center = -np.pi + (n.angle_bin + 0.5) * width
        np.testing.assert_allclose(
            [n.x, n.y], [n.radius * np.cos(center), n.radius * np.sin(center)], atol=1e-12
        )


def test_assign_exact_position():
    nodes = (
        Node(id=0, angle_bin=0, radius=1.0, x=1.0, y=0.0, density=1.0),
        Node(id=1, angle_bin=4, radius=2.0, x=-2.0, y=0.0, density=1.0),
    )
    out = assign_subsequences(np.array([[1.0, 0.0], [-2.0, 0.0]]), nodes)
    np.testing.assert_array_equal(out, [0, 1])


def test_assign_tie_breaks_to_smaller_id():
    nodes = (
        Node(id=2, angle_bin=0, radius=1.0, x=1.0, y=0.0, density=1.0),
        Node(id=5, angle_bin=4, radius=1.0, x=-1.0, y=0.0, density=1.0),
    )
    out = assign_subsequences(np.array([[0.0, 0.0]]), nodes)
    assert out[0] == 2


def test_assign_matches_brute_force():
    rng = np.random.default_rng(13)
    points = rng.normal(size=(1000, 2))
    nodes = tuple(
        Node(id=i, angle_bin=0, radius=0.0, x=float(x), y=float(y), density=1.0)
        for i, (x, y) in enumerate(rng.normal(size=(10, 2)))
    )
    got = assign_subsequences(points, nodes)
    for p, g in zip(points, got):
        d2 = [(p[0] - n.x) ** 2 + (p[1] - n.y) ** 2 for n in nodes]
        assert g == int(np.argmin(d2))


def test_collapse_path():
    assert collapse_path(np.array([3, 3, 7, 7, 3])) == (3, 7, 3)
    assert collapse_path(np.array([1])) == (1,)
    assert collapse_path(np.array([2, 2, 2])) == (2,)


def test_build_graph_constant_series():
    ds = Dataset(series=(TimeSeries(0, np.full(20, 3.5)),))
    graph = build_graph(ds, 4)
    assert len(graph.nodes) == 1
    assert graph.edges == {}
    assert graph.node_sequences == ((graph.nodes[0].id,),)
    assert len(graph.node_members[graph.nodes[0].id]) == 17


def test_build_graph_collapse_and_weights():
    ds = sine_square_dataset(n_per_class=5, seed=14)
    graph = build_graph(ds, 16, seed=1)
    # no self-loop can survive collapsing
    assert all(u != v for u, v in graph.edges)
    # edge weights recount from collapsed paths
    assert sum(graph.edges.values()) == sum(len(p) - 1 for p in graph.node_sequences)
    recount: dict[tuple[int, int], int] = {}
    for path in graph.node_sequences:
        for pair in zip(path[:-1], path[1:]):
            recount[pair] = recount.get(pair, 0) + 1
    assert recount == graph.edges


def test_build_graph_coverage():
    ds = sine_square_dataset(n_per_class=4, seed=15)
    length = 12
    graph = build_graph(ds, length, seed=2)
    total_members = sum(len(refs) for refs in graph.node_members.values())
    assert total_members == sum(len(s) - length + 1 for s in ds.series)
    # every subsequence of every series appears exactly once
    seen = {ref for refs in graph.node_members.values() for ref in refs}
    assert len(seen) == total_members


def test_build_graph_deterministic():
    ds = sine_square_dataset(n_per_class=4, seed=16)
    a = build_graph(ds, 10, seed=3)
    b = build_graph(ds, 10, seed=3)
    assert a.nodes == b.nodes
    assert a.edges == b.edges
    assert a.node_sequences == b.node_sequences
    assert a.node_members == b.node_members


def test_build_graph_length_guard():
    ds = Dataset(series=(TimeSeries(0, np.arange(10.0)),))
    with pytest.raises(DataError):
        build_graph(ds, 11)


def test_graph_to_dict_schema():
    ds = sine_square_dataset(n_per_class=3, seed=17)
    graph = build_graph(ds, 8, seed=4)
    payload = graph_to_dict(graph, include_members=True)
    assert payload["length"] == 8
    assert set(payload["nodes"][0]) == {"id", "x", "y", "angle_bin", "radius", "density"}
    assert set(payload["edges"][0]) == {"src", "dst", "weight"}
    assert len(payload["paths"]) == len(ds)
    assert sum(len(v) for v in payload["members"].values()) == sum(
        len(s) - 8 + 1 for s in ds.series
    )


def test_embedding_params_defaults():
    params = EmbeddingParams()
    assert params.sectors == 64
    assert params.grid_size == 128
    assert params.min_density_frac == 0.1
