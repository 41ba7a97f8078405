"""Regenerate the recorded API payloads the frontend tests run against.

Usage (from the repository root, with the Python package installed):

    python3 frontend/scripts/record_fixtures.py

Runs the pipeline on a small 3-class synthetic dataset, then captures each
endpoint's JSON via an in-process client into frontend/tests/fixtures/.
"""

import json
import sys
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from tsgraph import Dataset, TimeSeries, save_dataset
from tsgraph.runner import RunConfig, run
from tsgraph.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def motif_dataset(seed: int = 11) -> Dataset:
    rng = np.random.default_rng(seed)
    n = 128
    t = np.arange(n)
    width = 48
    m = np.arange(width)
    motifs = [
        2.0 * (1 - np.abs(m - (width - 1) / 2) / ((width - 1) / 2)),
        1.8 * np.sin(2 * np.pi * m / 6),
        np.where((m // 12) % 2 == 0, 1.8, -1.8),
    ]
    series, labels = [], []
    for cls in range(3):
        for _ in range(8):
            base = 0.2 * np.sin(2 * np.pi * t / n) + rng.normal(0, 0.08, n)
            pos = rng.integers(24, 57)
            base[pos : pos + width] += motifs[cls]
            series.append(base)
            labels.append(cls)
    return Dataset(
        series=tuple(TimeSeries(i, v) for i, v in enumerate(series)),
        true_labels=tuple(labels),
    )


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    work = FIXTURES / "_work"
    work.mkdir(exist_ok=True)
    data = work / "motifs.tsv"
    save_dataset(motif_dataset(), data)
    run(RunConfig(dataset_path=str(data), k=3, m=6, seed=42, out_dir=str(work / "motifs")))

    client = TestClient(create_app(work))
    run_id = "motifs"

    def record(name: str, path: str, params: dict | None = None) -> dict:
        response = client.get(path, params=params)
        response.raise_for_status()
        payload = response.json()
        (FIXTURES / name).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        return payload

    record("runs.json", "/api/runs")
    for tag, gamma in (("00", 0.0), ("04", 0.4), ("08", 0.8), ("10", 1.0)):
        record(f"graph_gamma{tag}.json", f"/api/runs/{run_id}/graph",
               {"lambda": 0.0, "gamma": gamma})
    graph = record("graph_default.json", f"/api/runs/{run_id}/graph",
                   {"lambda": 0.8, "gamma": 0.8})
    record("node_detail.json", f"/api/runs/{run_id}/node/{graph['nodes'][0]['id']}")
    record("clusters.json", f"/api/runs/{run_id}/clusters")
    record("underhood.json", f"/api/runs/{run_id}/underhood")

    artifact = json.loads((work / "motifs" / "artifact.json").read_text())
    (FIXTURES / "artifact_metrics.json").write_text(
        json.dumps({"metrics": artifact["metrics"],
                    "selected_length": artifact["selected_length"]},
                   indent=1, sort_keys=True) + "\n"
    )
    print(f"fixtures written to {FIXTURES}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
