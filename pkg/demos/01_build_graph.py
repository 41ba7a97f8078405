"""Build a transition graph for one subsequence length and look inside it.

Every stride-1 window of every series is z-normalized, projected to 2-D,
and snapped to the nearest density-peak node; runs of repeated nodes
collapse into a path whose consecutive pairs become weighted edges.
"""

import numpy as np

from tsgraph import Dataset, TimeSeries, build_graph, fit_projection, znormalize_rows
from tsgraph.dataset import sliding_windows

rng = np.random.default_rng(0)
n = 256
t = np.arange(n)

# Two families of shapes: smooth waves and sawtooth ramps.
series = []
for i in range(8):
    series.append(np.sin(2 * np.pi * 3 * t / n + rng.uniform(0, 6)) + rng.normal(0, 0.05, n))
for i in range(8):
    series.append(((t * (i + 2)) % 64) / 32.0 - 1.0 + rng.normal(0, 0.05, n))
dataset = Dataset(series=tuple(TimeSeries(i, v) for i, v in enumerate(series)))

length = 32
graph = build_graph(dataset, length, seed=1)

print(f"graph for window length {length}")
print(f"  nodes: {len(graph.nodes)}")
print(f"  edges: {len(graph.edges)} (total weight {sum(graph.edges.values())})")

# The projection underneath: top-2 directions of the window cloud.
windows = np.vstack(
    [znormalize_rows(sliding_windows(ts.values, length)) for ts in dataset.series]
)
projection = fit_projection(windows, length, seed=1)
print(f"  window cloud: {windows.shape[0]} windows -> 2-D, "
      f"spread x={projection.points[:, 0].std():.2f} y={projection.points[:, 1].std():.2f}")

# Nodes live on sector center rays; busier sectors mean more recurring shapes.
per_sector: dict[int, int] = {}
for node in graph.nodes:
    per_sector[node.angle_bin] = per_sector.get(node.angle_bin, 0) + 1
print(f"  populated sectors: {len(per_sector)} of 64")

top = sorted(graph.nodes, key=lambda nd: len(graph.node_members[nd.id]), reverse=True)[:5]
print("  heaviest nodes (id, members, radius):")
for node in top:
    print(f"    {node.id:3d}  {len(graph.node_members[node.id]):5d}  r={node.radius:.2f}")

# Each series' path through the graph is its behavioural signature.
print("  example paths (first 10 hops):")
for sid in (0, 8):
    print(f"    series {sid}: {list(graph.node_sequences[sid][:10])} ...")
