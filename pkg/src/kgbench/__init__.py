"""Benchmark harness for knowledge-graph engineering tasks."""

__version__ = "0.1.0"
