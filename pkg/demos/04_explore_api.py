"""Walk the explorer HTTP API against artifacts written by demo 02/03.

The same app can be served for the browser UI with:
    tsgraph serve --artifacts demo_runs --port 8765
Here it is queried in-process, no port needed.
"""

from pathlib import Path

from fastapi.testclient import TestClient

from tsgraph.service import create_app

if not Path("demo_runs").is_dir():
    raise SystemExit("run demos/02_full_pipeline.py and 03_interpretability.py first")

client = TestClient(create_app("demo_runs"))

runs = client.get("/api/runs").json()
print("available runs:")
for r in runs:
    print(f"  {r['id']}: {r['n_series']} series, k={r['k']}, "
          f"selected length {r['selected_length']}, ARI {r['ari']:.2f} "
          f"(baseline {r['baseline_ari']:.2f})")

run_id = runs[0]["id"]

# The graph frame: tune thresholds, watch the colored set shrink.
for lam, gamma in ((0.0, 0.0), (0.8, 0.8), (0.8, 0.95)):
    graph = client.get(f"/api/runs/{run_id}/graph",
                       params={"lambda": lam, "gamma": gamma}).json()
    colored = sum(n["colored"] for n in graph["nodes"])
    print(f"\nthresholds lambda={lam} gamma={gamma}: "
          f"{colored}/{len(graph['nodes'])} nodes colored")

# Drill into the most exclusive colored node.
graph = client.get(f"/api/runs/{run_id}/graph",
                   params={"lambda": 0.8, "gamma": 0.8}).json()
colored_nodes = [n for n in graph["nodes"] if n["colored"]]
if colored_nodes:
    node = max(colored_nodes, key=lambda n: max(n["exclusivity"]))
    detail = client.get(f"/api/runs/{run_id}/node/{node['id']}").json()
    print(f"\nnode {node['id']} (cluster {node['cluster']}): "
          f"{len(detail['members'])} member windows, e.g. "
          + ", ".join(f"series {m['series_id']}@{m['start']}" for m in detail["members"][:4]))

# The comparison frame: three groupings of the same series.
clusters = client.get(f"/api/runs/{run_id}/clusters").json()
print("\ngroup sizes:")
for method, groups in clusters["groups"].items():
    if groups is not None:
        print(f"  {method:9s} {[len(g) for g in groups]}")
print(f"metric table: {clusters['metrics']}")

# Under the hood: the per-length score curve that picked the display graph.
hood = client.get(f"/api/runs/{run_id}/underhood").json()
best = max(hood["length_scores"], key=lambda s: s["product"])
print(f"\nlength scores: {len(hood['length_scores'])} entries; "
      f"argmax product at l={best['l']} == selected {hood['selected_length']}")
