"""Command-line client of the benchmark service.

All subcommands speak HTTP to the service app: in-process by default, or to
a remote base URL with --server.  File paths are interpreted where the
service runs, which for the default in-process mode is this machine.

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 probe failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

import httpx

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_PROBE = 3


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app, base_url="http://kgbench.internal", raise_server_exceptions=False)


def _read_config(path: str) -> tuple[dict[str, Any], str] | int:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return data, str(p.resolve().parent)


def _fail(resp: httpx.Response) -> int:
    try:
        body = resp.json()
    except ValueError:
        body = {}
    detail = body.get("detail", resp.text.strip() or f"HTTP {resp.status_code}")
    print(f"error: {detail}", file=sys.stderr)
    kind = body.get("error_kind")
    if kind == "config":
        return EXIT_CONFIG
    if kind in ("io", "run"):
        return EXIT_IO
    if resp.status_code == 422:
        return EXIT_CONFIG
    return EXIT_IO


def _cmd_run(args: argparse.Namespace) -> int:
    loaded = _read_config(args.config)
    if isinstance(loaded, int):
        return loaded
    data, base_dir = loaded
    payload: dict[str, Any] = {"config": data, "base_dir": base_dir}
    if args.replay:
        payload["replay"] = True
    if args.resume:
        payload["resume_path"] = args.resume
    with _client(args.server) as client:
        resp = client.post("/runs", json=payload)
        if resp.status_code != 200:
            return _fail(resp)
        out = resp.json()
    print(f"run {out['run_id']}: {out['records_written']} records written to {out['results_path']}")
    if out["skipped_existing"]:
        print(f"  skipped {out['skipped_existing']} already-complete cells")
    if out["error_records"]:
        print(f"  {out['error_records']} cells recorded connector errors")
    return EXIT_OK


def _cmd_rescore(args: argparse.Namespace) -> int:
    with _client(args.server) as client:
        resp = client.post("/rescore", json={"results_path": args.results, "out_path": args.out})
        if resp.status_code != 200:
            return _fail(resp)
        out = resp.json()
    print(f"rescored {out['records_written']} records to {args.out}")
    for issue in out["issues"]:
        print(f"  skipped line {issue['line_no']}: {issue['message']}", file=sys.stderr)
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    with _client(args.server) as client:
        resp = client.post("/stats", json={"results_path": args.results, "out_dir": args.out_dir})
        if resp.status_code != 200:
            return _fail(resp)
        out = resp.json()
    print(f"{out['records']} records -> {out['stat_rows']} stat rows")
    print(f"  {out['stats_csv']}")
    print(f"  {out['points_csv']}")
    for issue in out["issues"]:
        print(f"  skipped line {issue['line_no']}: {issue['message']}", file=sys.stderr)
    return EXIT_OK


def _cmd_tasks_list(args: argparse.Namespace) -> int:
    with _client(args.server) as client:
        resp = client.get("/tasks")
        if resp.status_code != 200:
            return _fail(resp)
        tasks = resp.json()
    for task in tasks:
        sizes = task["default_sizes"]
        print(
            f"{task['task_id']}  v{task['task_version']}  "
            f"template {task['prompt_template_version']}  {len(sizes)} default size(s)"
        )
    return EXIT_OK


def _cmd_models_probe(args: argparse.Namespace) -> int:
    loaded = _read_config(args.config)
    if isinstance(loaded, int):
        return loaded
    data, base_dir = loaded
    with _client(args.server) as client:
        resp = client.post("/probe", json={"config": data, "base_dir": base_dir})
        if resp.status_code != 200:
            return _fail(resp)
        out = resp.json()
    for entry in out["results"]:
        status = "ok" if entry["ok"] else "FAIL"
        print(f"{entry['model_id']}: {status} - {entry['message']}")
    return EXIT_OK if out["all_ok"] else EXIT_PROBE


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgbench", description=__doc__)
    parser.add_argument("--server", help="base URL of a remote service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a benchmark configuration")
    p_run.add_argument("--config", required=True, help="path to a benchmark config JSON file")
    p_run.add_argument("--replay", action="store_true", help="serve responses from the replay cache")
    p_run.add_argument("--resume", metavar="RESULTS_JSONL", help="continue a partial results file")
    p_run.set_defaults(func=_cmd_run)

    p_re = sub.add_parser("rescore", help="re-evaluate stored responses with current scorers")
    p_re.add_argument("--results", required=True, help="input results JSONL")
    p_re.add_argument("--out", required=True, help="output results JSONL")
    p_re.set_defaults(func=_cmd_rescore)

    p_st = sub.add_parser("stats", help="aggregate results into stats.csv and points.csv")
    p_st.add_argument("--results", required=True, help="results JSONL to aggregate")
    p_st.add_argument("--out-dir", required=True, help="directory for the CSV files")
    p_st.set_defaults(func=_cmd_stats)

    p_tasks = sub.add_parser("tasks", help="task registry commands")
    tasks_sub = p_tasks.add_subparsers(dest="tasks_command", required=True)
    p_list = tasks_sub.add_parser("list", help="list registered tasks")
    p_list.set_defaults(func=_cmd_tasks_list)

    p_models = sub.add_parser("models", help="model connector commands")
    models_sub = p_models.add_subparsers(dest="models_command", required=True)
    p_probe = models_sub.add_parser("probe", help="send one tiny prompt per connector")
    p_probe.add_argument("--config", required=True, help="path to a benchmark config JSON file")
    p_probe.set_defaults(func=_cmd_models_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        print(f"cannot reach service: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
