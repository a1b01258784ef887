import json

import pytest

from kgbench.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_PROBE, main


def write_config(tmp_path, models=None, tasks=None, name="bench.json", **extra):
    data = {
        "models": models or [{"model_id": "oracle", "kind": "oracle"}],
        "tasks": tasks
        or [{"task_id": "synth-gen", "sizes": [{"persons": 4, "links": 6}], "repetitions": 2}],
    }
    data.update(extra)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


class TestRun:
    def test_successful_run(self, tmp_path, capsys):
        config = write_config(tmp_path)
        assert main(["run", "--config", str(config)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "2 records written to" in out
        assert str(tmp_path / "results.jsonl") in out
        assert (tmp_path / "results.jsonl").is_file()

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(["run", "--config", str(tmp_path / "absent.json")])
        assert code == EXIT_CONFIG
        assert "cannot read config" in capsys.readouterr().err

    def test_unparsable_config_file(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert main(["run", "--config", str(path)]) == EXIT_CONFIG
        assert "not valid JSON" in capsys.readouterr().err

    def test_semantically_invalid_config(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"models": [], "tasks": []}))
        assert main(["run", "--config", str(path)]) == EXIT_CONFIG
        assert "error:" in capsys.readouterr().err

    def test_rerun_without_resume_is_io_error(self, tmp_path, capsys):
        config = write_config(tmp_path)
        main(["run", "--config", str(config)])
        assert main(["run", "--config", str(config)]) == EXIT_IO
        assert "already exists" in capsys.readouterr().err

    def test_resume_completes_partial_file(self, tmp_path, capsys):
        config = write_config(tmp_path)
        main(["run", "--config", str(config)])
        results = tmp_path / "results.jsonl"
        lines = results.read_text().splitlines()
        results.write_text(lines[0] + "\n")
        capsys.readouterr()
        code = main(["run", "--config", str(config), "--resume", str(results)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "1 records written" in out
        assert "skipped 1 already-complete cells" in out

    def test_replay_flag_populates_cache(self, tmp_path):
        config = write_config(tmp_path)
        assert main(["run", "--config", str(config), "--replay"]) == EXIT_OK
        assert list((tmp_path / "replay-cache").glob("*.json"))

    def test_relative_paths_resolve_against_config_dir(self, tmp_path, monkeypatch):
        # Invoking from elsewhere must not scatter outputs into the cwd.
        somewhere_else = tmp_path / "elsewhere"
        somewhere_else.mkdir()
        monkeypatch.chdir(somewhere_else)
        config = write_config(tmp_path)
        assert main(["run", "--config", str(config)]) == EXIT_OK
        assert (tmp_path / "results.jsonl").is_file()
        assert not (somewhere_else / "results.jsonl").exists()


class TestRescore:
    def test_rescore_results(self, tmp_path, capsys):
        config = write_config(tmp_path)
        main(["run", "--config", str(config)])
        results = tmp_path / "results.jsonl"
        out_path = tmp_path / "rescored.jsonl"
        capsys.readouterr()
        code = main(["rescore", "--results", str(results), "--out", str(out_path)])
        assert code == EXIT_OK
        assert "rescored 2 records" in capsys.readouterr().out
        assert out_path.read_bytes() == results.read_bytes()

    def test_missing_results_is_io_error(self, tmp_path, capsys):
        code = main(
            ["rescore", "--results", str(tmp_path / "no.jsonl"), "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_IO
        assert "error:" in capsys.readouterr().err


class TestStats:
    def test_stats_writes_csvs(self, tmp_path, capsys):
        config = write_config(tmp_path)
        main(["run", "--config", str(config)])
        capsys.readouterr()
        code = main(
            [
                "stats",
                "--results",
                str(tmp_path / "results.jsonl"),
                "--out-dir",
                str(tmp_path / "stats"),
            ]
        )
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "2 records ->" in out
        assert (tmp_path / "stats" / "stats.csv").is_file()
        assert (tmp_path / "stats" / "points.csv").is_file()

    def test_missing_results_is_io_error(self, tmp_path):
        code = main(
            ["stats", "--results", str(tmp_path / "no.jsonl"), "--out-dir", str(tmp_path / "s")]
        )
        assert code == EXIT_IO


class TestTasksList:
    def test_lists_all_tasks(self, capsys):
        assert main(["tasks", "list"]) == EXIT_OK
        out = capsys.readouterr().out
        for line in ("turtle-fix", "fact-extract", "synth-gen"):
            assert line in out
        assert "8 default size(s)" in out


class TestModelsProbe:
    def test_all_ok(self, tmp_path, capsys):
        config = write_config(tmp_path)
        assert main(["models", "probe", "--config", str(config)]) == EXIT_OK
        assert "oracle: ok" in capsys.readouterr().out

    def test_failing_connector_sets_probe_exit(self, tmp_path, capsys):
        config = write_config(
            tmp_path,
            models=[
                {"model_id": "oracle", "kind": "oracle"},
                {"model_id": "dead", "kind": "replay", "cache_dir": "no-such-dir"},
            ],
        )
        assert main(["models", "probe", "--config", str(config)]) == EXIT_PROBE
        out = capsys.readouterr().out
        assert "dead: FAIL" in out
        assert str(tmp_path / "no-such-dir") in out

    def test_missing_config(self, tmp_path):
        assert main(["models", "probe", "--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG


class TestRemote:
    def test_unreachable_server_is_io_error(self, tmp_path, capsys):
        config = write_config(tmp_path)
        code = main(
            [
                "--server",
                "http://127.0.0.1:1",
                "run",
                "--config",
                str(config),
            ]
        )
        assert code == EXIT_IO
        assert "cannot reach service" in capsys.readouterr().err


class TestParser:
    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            main([])

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
