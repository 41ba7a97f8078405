"""Command-line entry points: run the pipeline, serve artifacts, compare labels."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError, TsGraphError
from .metrics import all_scores


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsgraph",
        description="Graph-based time series clustering with interpretable subgraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="cluster a dataset and write a run artifact")
    p_run.add_argument("--dataset", required=True, help="path to the dataset file")
    p_run.add_argument("--format", default="ucr-tsv", choices=["ucr-tsv", "csv"])
    p_run.add_argument("--k", required=True, type=int, help="number of clusters")
    p_run.add_argument("--m", type=int, default=10, help="number of candidate lengths")
    p_run.add_argument("--seed", type=int, default=42)
    p_run.add_argument("--sectors", type=int, default=64, help="angular bins for node extraction")
    p_run.add_argument("--lambda", dest="min_representativity", type=float, default=0.8,
                       help="representativity threshold for cluster subgraphs")
    p_run.add_argument("--gamma", dest="min_exclusivity", type=float, default=0.8,
                       help="exclusivity threshold for cluster subgraphs")
    p_run.add_argument("--min-density", dest="min_density_frac", type=float, default=0.1)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--dump-features", action="store_true",
                       help="also write per-length feature matrices as CSV")
    p_run.add_argument("--out", required=True, help="output directory for artifact.json")

    p_serve = sub.add_parser("serve", help="serve run artifacts over HTTP")
    p_serve.add_argument("--artifacts", required=True, help="directory of run artifacts")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)

    p_metrics = sub.add_parser("metrics", help="compare two label files")
    p_metrics.add_argument("a", help="JSON label file (list, or object with 'labels')")
    p_metrics.add_argument("b", help="JSON label file to compare against")
    return parser


def _load_labels(path: str) -> list[int]:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if isinstance(payload, dict):
        for key in ("labels", "final_labels"):
            if key in payload:
                payload = payload[key]
                break
        else:
            raise ConfigError(f"{path}: no 'labels' field")
    if not isinstance(payload, list):
        raise ConfigError(f"{path}: expected a list of labels")
    return [int(x) for x in payload]


def _cmd_run(ns: argparse.Namespace) -> int:
    from .runner import RunConfig, run

    config = RunConfig(
        dataset_path=ns.dataset,
        k=ns.k,
        format=ns.format,
        m=ns.m,
        seed=ns.seed,
        sectors=ns.sectors,
        min_density_frac=ns.min_density_frac,
        min_representativity=ns.min_representativity,
        min_exclusivity=ns.min_exclusivity,
        out_dir=ns.out,
        dump_features=ns.dump_features,
    )
    artifact = run(config, workers=ns.workers)
    print(f"selected length: {artifact.selected_length}")
    if artifact.scores["graph"] is not None:
        print(f"ari: {artifact.scores['graph']['ari']:.4f}")
    print(f"artifact: {Path(ns.out) / 'artifact.json'}")
    return 0


def _cmd_serve(ns: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ns.artifacts)
    uvicorn.run(app, host=ns.host, port=ns.port, log_level="info")
    return 0


def _cmd_metrics(ns: argparse.Namespace) -> int:
    a = _load_labels(ns.a)
    b = _load_labels(ns.b)
    for name, value in all_scores(a, b).items():
        print(f"{name}: {value:.6f}")
    return 0


def cli(argv: list[str] | None = None) -> int:
    """Parse and dispatch; returns 0 on success, 2 on config error, 1 on failure."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if ns.command == "run":
            return _cmd_run(ns)
        if ns.command == "serve":
            return _cmd_serve(ns)
        return _cmd_metrics(ns)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TsGraphError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
