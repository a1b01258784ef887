"""Benchmark harness: configuration, run loop, records, rescoring, stats."""
from .config import BenchmarkConfig, ConfigError, OutputPaths, TaskPlan, load_config, parse_config
from .records import RecordError, RunRecord, read_records, record_key, write_records
from .rescore import rescore_file, rescore_records
from .runner import ProbeResult, RunError, RunSummary, probe_models, run
from .stats import StatRow, aggregate_stats, emit_plot_data

__all__ = [
    "BenchmarkConfig",
    "ConfigError",
    "OutputPaths",
    "ProbeResult",
    "RecordError",
    "RunError",
    "RunRecord",
    "RunSummary",
    "StatRow",
    "TaskPlan",
    "aggregate_stats",
    "emit_plot_data",
    "load_config",
    "parse_config",
    "probe_models",
    "read_records",
    "record_key",
    "rescore_file",
    "rescore_records",
    "run",
    "write_records",
]
