"""Extraction task: factsheet plaintext in, Turtle out, scored against a
curated reference graph.

Assets live as directories of four files (plaintext.txt, reference.ttl,
instructions.txt, meta.json) so a different factsheet can be dropped in
without code changes.  The task has a single fixed size.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..rdf import (
    Graph,
    ParseError,
    extract_turtle_candidate,
    normalize,
    parse_turtle_strict,
    salvage_parse_turtle,
    serialize_turtle,
    triple_set_scores,
)
from .base import BenchmarkTask, TaskInstance
from .turtle_fix import _render_template

__all__ = [
    "AssetError",
    "FactExtractScores",
    "FactExtractTask",
    "FactSheetAsset",
    "build_prompt",
    "evaluate",
    "load_asset",
]

_ASSET_ROOT = Path(__file__).resolve().parent / "assets"
DEFAULT_ASSET = "vx220-printer"

_REQUIRED_FILES = ("plaintext.txt", "reference.ttl", "instructions.txt", "meta.json")


class AssetError(Exception):
    """An asset directory is incomplete or its reference does not parse."""


@dataclass(frozen=True)
class FactSheetAsset:
    asset_id: str
    version: str
    plaintext: str
    reference: Graph
    instructions: str


@dataclass(frozen=True)
class FactExtractScores:
    f1: float
    precision: float
    recall: float
    answer_parsable: bool
    failed_statements: int


def load_asset(path: str | Path) -> FactSheetAsset:
    root = Path(path)
    for name in _REQUIRED_FILES:
        if not (root / name).is_file():
            raise AssetError(f"asset at {root} is missing {name}")
    reference_text = (root / "reference.ttl").read_text(encoding="utf-8")
    try:
        reference = parse_turtle_strict(reference_text)
    except ParseError as exc:
        raise AssetError(f"reference.ttl does not parse: {exc}") from exc
    if len(reference) == 0:
        raise AssetError("reference.ttl denotes an empty graph")
    try:
        meta = json.loads((root / "meta.json").read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AssetError(f"meta.json is not valid JSON: {exc}") from exc
    return FactSheetAsset(
        asset_id=str(meta.get("asset_id", root.name)),
        version=str(meta.get("version", "0")),
        plaintext=(root / "plaintext.txt").read_text(encoding="utf-8"),
        reference=reference,
        instructions=(root / "instructions.txt").read_text(encoding="utf-8"),
    )


def build_prompt(asset: FactSheetAsset) -> str:
    return _render_template(
        "fact_extract_v1.txt",
        {"instructions": asset.instructions.rstrip(), "plaintext": asset.plaintext.rstrip()},
    )


def evaluate(response: str, asset: FactSheetAsset) -> FactExtractScores:
    candidate = extract_turtle_candidate(response)
    salvaged, failed = salvage_parse_turtle(candidate)
    try:
        parse_turtle_strict(candidate)
        parsable = True
    except ParseError:
        parsable = False
    diff = triple_set_scores(normalize(salvaged), normalize(asset.reference))
    return FactExtractScores(
        f1=diff.f1,
        precision=diff.precision,
        recall=diff.recall,
        answer_parsable=parsable,
        failed_statements=failed,
    )


class FactExtractTask(BenchmarkTask):
    task_id = "fact-extract"
    task_version = "1.0"
    prompt_template_version = "v1"

    def __init__(self, asset_path: str | Path | None = None) -> None:
        self._asset = load_asset(asset_path or _ASSET_ROOT / DEFAULT_ASSET)

    @property
    def asset(self) -> FactSheetAsset:
        return self._asset

    def default_sizes(self) -> list[dict[str, Any]]:
        return [{}]

    def make_instance(
        self, seed: int, size_index: int, size_params: Mapping[str, Any], repetition: int
    ) -> TaskInstance:
        # The asset is fixed; the seed only feeds the record, not the content.
        return TaskInstance(
            task_id=self.task_id,
            size_index=size_index,
            size_params=dict(size_params),
            repetition=repetition,
            seed=seed,
            prompt=build_prompt(self._asset),
            payload=self._asset,
        )

    def evaluate(self, response: str, instance: TaskInstance) -> dict[str, Any]:
        return dataclasses.asdict(evaluate(response, instance.payload))

    def oracle_response(self, instance: TaskInstance) -> str:
        return serialize_turtle(instance.payload.reference)
