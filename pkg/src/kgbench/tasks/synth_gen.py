"""Generation task: request a FOAF dataset of a given size, measure how far
the generated person and link counts land from the request.

Scores are relative errors, 0 on an exact match, negative when the model
undershoots, -1 when nothing parsable came back at all.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Mapping

from ..rdf import Graph, ParseError, extract_turtle_candidate, parse_turtle_strict, salvage_parse_turtle
from ..rdf.ns import FOAF, FOAF_KNOWS, FOAF_PERSON, RDF_TYPE
from .base import BenchmarkTask, TaskInstance
from .turtle_fix import _render_template

__all__ = [
    "DEFAULT_SCHEDULE",
    "RangeError",
    "SynthGenScores",
    "SynthGenSize",
    "SynthGenTask",
    "build_prompt",
    "count_entities",
    "evaluate",
    "foaf_document",
    "size_schedule",
]

# persons double per step, links stay at twice the persons
DEFAULT_SCHEDULE: tuple[tuple[int, int], ...] = tuple(
    (5 * 2**i, 10 * 2**i) for i in range(8)
)


class RangeError(ValueError):
    """A size index outside the configured schedule."""


@dataclass(frozen=True)
class SynthGenSize:
    persons_requested: int
    links_requested: int
    size_index: int

    def __post_init__(self) -> None:
        if self.persons_requested < 1:
            raise RangeError("persons_requested must be positive")
        if self.links_requested < 0:
            raise RangeError("links_requested must be non-negative")
        cap = self.persons_requested * (self.persons_requested - 1)
        if self.links_requested > cap:
            raise RangeError(
                f"{self.links_requested} links do not fit a simple directed graph "
                f"over {self.persons_requested} persons (capacity {cap})"
            )


@dataclass(frozen=True)
class SynthGenScores:
    persons_relative_error: float
    links_relative_error: float
    persons_generated: int
    links_generated: int
    answer_parsable: bool


def size_schedule(
    size_index: int, schedule: tuple[tuple[int, int], ...] = DEFAULT_SCHEDULE
) -> SynthGenSize:
    """The size for a 1-based index of the (possibly overridden) schedule."""
    if not 1 <= size_index <= len(schedule):
        raise RangeError(f"size index {size_index} outside 1..{len(schedule)}")
    persons, links = schedule[size_index - 1]
    return SynthGenSize(persons_requested=persons, links_requested=links, size_index=size_index)


def build_prompt(size: SynthGenSize) -> str:
    return _render_template(
        "synth_gen_v1.txt",
        {"persons": str(size.persons_requested), "links": str(size.links_requested)},
    )


def count_entities(g: Graph) -> tuple[int, int]:
    """Distinct typed foaf:Person subjects and distinct foaf:knows triples."""
    persons = {
        t.subject
        for t in g
        if t.predicate.value == RDF_TYPE and getattr(t.object, "value", None) == FOAF_PERSON
    }
    links = sum(1 for t in g if t.predicate.value == FOAF_KNOWS)
    return len(persons), links


def evaluate(response: str, size: SynthGenSize) -> SynthGenScores:
    candidate = extract_turtle_candidate(response)
    salvaged, _ = salvage_parse_turtle(candidate)
    try:
        parse_turtle_strict(candidate)
        parsable = True
    except ParseError:
        parsable = False
    persons, links = count_entities(salvaged)
    persons_error = (persons - size.persons_requested) / size.persons_requested
    if size.links_requested > 0:
        links_error = (links - size.links_requested) / size.links_requested
    else:
        # No meaningful denominator: report the raw surplus (0.0 on a match).
        links_error = float(links)
    return SynthGenScores(
        persons_relative_error=persons_error,
        links_relative_error=links_error,
        persons_generated=persons,
        links_generated=links,
        answer_parsable=parsable,
    )


def foaf_document(persons: int, links: int) -> str:
    """A well-formed Turtle document with exactly the requested counts.

    Links walk the persons cyclically at growing offsets, so any count up
    to persons*(persons-1) comes out as that many distinct ordered pairs.
    """
    if persons < 0 or links < 0:
        raise ValueError("counts must be non-negative")
    cap = persons * (persons - 1)
    if links > cap:
        raise ValueError(f"{links} links exceed capacity {cap} for {persons} persons")
    lines = [
        "@prefix foaf: <" + FOAF + "> .",
        "@prefix ex: <http://example.org/net/> .",
        "",
    ]
    for i in range(1, persons + 1):
        lines.append(f'ex:p{i} a foaf:Person ; foaf:name "Person {i}" .')
    emitted = 0
    offset = 1
    while emitted < links:
        for i in range(1, persons + 1):
            if emitted >= links:
                break
            j = (i - 1 + offset) % persons + 1
            lines.append(f"ex:p{i} foaf:knows ex:p{j} .")
            emitted += 1
        offset += 1
    return "\n".join(lines) + "\n"


class SynthGenTask(BenchmarkTask):
    task_id = "synth-gen"
    task_version = "1.0"
    prompt_template_version = "v1"

    def default_sizes(self) -> list[dict[str, Any]]:
        return [{"persons": p, "links": l} for p, l in DEFAULT_SCHEDULE]

    def make_instance(
        self, seed: int, size_index: int, size_params: Mapping[str, Any], repetition: int
    ) -> TaskInstance:
        size = SynthGenSize(
            persons_requested=int(size_params["persons"]),
            links_requested=int(size_params["links"]),
            size_index=size_index,
        )
        return TaskInstance(
            task_id=self.task_id,
            size_index=size_index,
            size_params=dict(size_params),
            repetition=repetition,
            seed=seed,
            prompt=build_prompt(size),
            payload=size,
        )

    def evaluate(self, response: str, instance: TaskInstance) -> dict[str, Any]:
        return dataclasses.asdict(evaluate(response, instance.payload))

    def oracle_response(self, instance: TaskInstance) -> str:
        size = instance.payload
        return foaf_document(size.persons_requested, size.links_requested)
