import csv
import math
import statistics

from kgbench.harness.records import RunRecord
from kgbench.harness.stats import (
    POINTS_HEADER,
    STATS_HEADER,
    StatRow,
    aggregate_stats,
    emit_plot_data,
)


def record(scores, task_id="turtle-fix", model_id="m", size_index=1, repetition=1):
    return RunRecord(
        run_id="r",
        timestamp_utc="2024-09-17T10:00:00+00:00",
        task_id=task_id,
        task_version="1.0",
        prompt_template_version="v1",
        model_id=model_id,
        size_index=size_index,
        size_params={},
        repetition=repetition,
        seed=0,
        prompt="p",
        response="a",
        scores=scores,
        duration_ms=1,
    )


class TestAggregation:
    def test_mean_median_of_skewed_group(self):
        records = [
            record({"f1": v}, repetition=i + 1) for i, v in enumerate([0.0, 0.0, 1.0])
        ]
        rows = aggregate_stats(records)
        assert len(rows) == 1
        row = rows[0]
        assert row.n == 3
        assert math.isclose(row.mean, 1 / 3)
        assert row.median == 0.0
        assert row.min == 0.0
        assert row.max == 1.0
        assert math.isclose(row.stddev, statistics.stdev([0.0, 0.0, 1.0]))

    def test_single_value_has_zero_stddev(self):
        rows = aggregate_stats([record({"f1": 0.7})])
        assert rows[0].stddev == 0.0

    def test_groups_split_by_all_four_keys(self):
        records = [
            record({"f1": 1.0}),
            record({"f1": 1.0}, task_id="synth-gen"),
            record({"f1": 1.0}, model_id="m2"),
            record({"f1": 1.0}, size_index=2),
            record({"recall": 1.0}),
        ]
        rows = aggregate_stats(records)
        assert len(rows) == 5

    def test_booleans_become_rates(self):
        records = [
            record({"answer_parsable": True}, repetition=1),
            record({"answer_parsable": True}, repetition=2),
            record({"answer_parsable": False}, repetition=3),
        ]
        row = aggregate_stats(records)[0]
        assert math.isclose(row.mean, 2 / 3)

    def test_non_numeric_scores_ignored(self):
        rows = aggregate_stats([record({"f1": 0.5, "note": "skipped cell"})])
        assert [r.score_name for r in rows] == ["f1"]

    def test_rows_sorted_by_group_key(self):
        records = [
            record({"f1": 1.0}, task_id="turtle-fix", model_id="z"),
            record({"f1": 1.0}, task_id="fact-extract", model_id="a"),
            record({"b_score": 1.0, "a_score": 1.0}, task_id="fact-extract", model_id="a"),
        ]
        rows = aggregate_stats(records)
        keys = [(r.task_id, r.model_id, r.size_index, r.score_name) for r in rows]
        assert keys == sorted(keys)

    def test_empty_input(self):
        assert aggregate_stats([]) == []


class TestCsvOutput:
    def test_headers_exact(self, tmp_path):
        records = [record({"f1": 0.5})]
        stats_path, points_path = emit_plot_data(aggregate_stats(records), records, tmp_path)
        with open(stats_path) as handle:
            assert next(csv.reader(handle)) == STATS_HEADER
        with open(points_path) as handle:
            assert next(csv.reader(handle)) == POINTS_HEADER
        assert STATS_HEADER == [
            "task_id", "model_id", "size_index", "score_name",
            "n", "mean", "median", "stddev", "min", "max",
        ]
        assert POINTS_HEADER == [
            "task_id", "model_id", "size_index", "repetition", "score_name", "value",
        ]

    def test_values_round_trip_through_repr(self, tmp_path):
        records = [record({"f1": v}, repetition=i + 1) for i, v in enumerate([0.0, 0.0, 1.0])]
        stats_path, _ = emit_plot_data(aggregate_stats(records), records, tmp_path)
        with open(stats_path) as handle:
            reader = csv.DictReader(handle)
            row = next(reader)
        assert float(row["mean"]) == 1 / 3
        assert float(row["median"]) == 0.0
        assert int(row["n"]) == 3

    def test_points_one_line_per_numeric_score(self, tmp_path):
        records = [
            record({"f1": 0.5, "answer_parsable": True, "note": "text"}, repetition=1),
            record({"f1": 0.25}, repetition=2),
        ]
        _, points_path = emit_plot_data(aggregate_stats(records), records, tmp_path)
        with open(points_path) as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 3
        parsable = [r for r in rows if r["score_name"] == "answer_parsable"]
        assert parsable[0]["value"] == "1.0"

    def test_output_directory_created(self, tmp_path):
        target = tmp_path / "deep" / "nested"
        stats_path, points_path = emit_plot_data([], [], target)
        assert stats_path.is_file()
        assert points_path.is_file()
        assert stats_path.parent == target
