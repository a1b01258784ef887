"""Repair task: corrupt a known-good Turtle document, score the repair.

An instance is a seeded synthetic reference graph (a small equipment
registry with people, devices, typed literals and a few blank nodes),
serialized and then damaged by a seeded draw from a fixed manipulation
taxonomy.  The model is asked to fix the syntax; scoring compares the
salvaged triples of its answer against the uncorrupted reference.
"""
from __future__ import annotations

import dataclasses
import json
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..rdf import (
    Graph,
    Iri,
    Literal,
    BlankNode,
    ParseError,
    Triple,
    extract_turtle_candidate,
    normalize,
    parse_turtle_strict,
    salvage_parse_turtle,
    serialize_turtle,
    split_statements,
    triple_set_scores,
)
from ..rdf.ns import RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_INTEGER
from .base import BenchmarkTask, SizeError, TaskInstance

__all__ = [
    "ErrorInjection",
    "TurtleFixInstance",
    "TurtleFixScores",
    "TurtleFixSize",
    "TurtleFixTask",
    "build_prompt",
    "evaluate",
    "export_instance",
    "generate_instance",
    "inject_errors",
    "restore_errors",
]

_ID_NS = "http://lab.example.org/id/"
_VOCAB_NS = "http://lab.example.org/vocab/"
_PREFIXES = {"id": _ID_NS, "lab": _VOCAB_NS}

_FIRST_NAMES = [
    "Ada", "Bjoern", "Chen", "Dora", "Emil", "Farah", "Grit", "Hugo",
    "Iris", "Jonas", "Kira", "Liam", "Mara", "Nils", "Olga", "Pavel",
]
_LAST_NAMES = [
    "Arnold", "Berg", "Castillo", "Demir", "Eriksen", "Fontaine",
    "Gupta", "Haas", "Ivanova", "Jansen",
]
_DEVICE_KINDS = ["printer", "scanner", "router", "sensor", "camera", "plotter"]

ERROR_KINDS = (
    "drop_statement_dot",
    "swap_semicolon_comma",
    "break_prefix_directive",
    "delete_iri_closing_bracket",
    "unbalance_literal_quote",
    "undeclared_prefix",
)


@dataclass(frozen=True)
class TurtleFixSize:
    triple_count: int
    error_count: int

    def __post_init__(self) -> None:
        if self.triple_count < 1:
            raise SizeError("triple_count must be at least 1")
        if self.error_count < 1:
            raise SizeError("error_count must be at least 1")


@dataclass(frozen=True)
class ErrorInjection:
    """One applied manipulation: what was done, where, and both unit texts."""

    kind: str
    statement_index: int
    before: str
    after: str


@dataclass(frozen=True)
class TurtleFixInstance:
    seed: int
    size: TurtleFixSize
    reference: Graph
    corrupted_text: str
    error_log: tuple[ErrorInjection, ...]
    prompt: str


@dataclass(frozen=True)
class TurtleFixScores:
    f1: float
    precision: float
    recall: float
    answer_parsable: bool
    exact_restore: bool
    failed_statements: int


def _vocab(local: str) -> Iri:
    return Iri(_VOCAB_NS + local)


def _reference_graph(seed: int, triple_count: int) -> Graph:
    """A deterministic registry graph with exactly triple_count triples."""
    rng = random.Random(seed)
    triples: set[Triple] = set()
    people: list[Iri] = []
    devices: list[Iri] = []
    flagged: set[Iri] = set()
    spec_given: set[Iri] = set()
    spec_count = 0
    serial = 1000 + rng.randrange(9000)

    def emit(*candidates: Triple) -> int:
        added = 0
        for t in candidates:
            if len(triples) >= triple_count:
                break
            if t not in triples:
                triples.add(t)
                added += 1
        return added

    def add_person() -> int:
        node = Iri(f"{_ID_NS}staff-{len(people) + 1}")
        people.append(node)
        name = f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}"
        return emit(
            Triple(node, Iri(RDF_TYPE), _vocab("Member")),
            Triple(node, _vocab("name"), Literal(name)),
        )

    def add_device() -> int:
        nonlocal serial
        node = Iri(f"{_ID_NS}device-{len(devices) + 1}")
        devices.append(node)
        serial += rng.randrange(1, 9)
        kind = rng.choice(_DEVICE_KINDS)
        return emit(
            Triple(node, Iri(RDF_TYPE), _vocab("Device")),
            Triple(node, _vocab("label"), Literal(f"{kind}-{serial}")),
            Triple(node, _vocab("serial"), Literal(str(serial), datatype=XSD_INTEGER)),
        )

    def add_operates() -> int:
        if not people or not devices:
            return 0
        return emit(Triple(rng.choice(people), _vocab("operates"), rng.choice(devices)))

    def add_works_with() -> int:
        if len(people) < 2:
            return 0
        a, b = rng.sample(people, 2)
        return emit(Triple(a, _vocab("worksWith"), b))

    def add_flag() -> int:
        unflagged = [d for d in devices if d not in flagged]
        if not unflagged:
            return 0
        d = rng.choice(unflagged)
        flagged.add(d)
        value = rng.choice(["true", "false"])
        return emit(Triple(d, _vocab("active"), Literal(value, datatype=XSD_BOOLEAN)))

    def add_power_spec() -> int:
        nonlocal spec_count
        bare = [d for d in devices if d not in spec_given]
        if not bare:
            return 0
        d = rng.choice(bare)
        spec_given.add(d)
        spec_count += 1
        node = BlankNode(f"spec{spec_count}")
        watts = f"{rng.randrange(20, 900)}.{rng.randrange(1, 10)}"
        return emit(
            Triple(d, _vocab("powerSpec"), node),
            Triple(node, _vocab("voltage"), Literal(rng.choice(["110", "230"]), datatype=XSD_INTEGER)),
            Triple(node, _vocab("watts"), Literal(watts, datatype=XSD_DECIMAL)),
        )

    actions = [add_person, add_device, add_operates, add_works_with, add_flag, add_power_spec]
    weights = [3, 3, 2, 2, 1, 1]
    stall = 0
    while len(triples) < triple_count:
        if rng.choices(actions, weights)[0]() == 0:
            stall += 1
            if stall >= 5:
                add_device()  # serial counter advances, so this always lands fresh triples
                stall = 0
        else:
            stall = 0
    return Graph(triples, _PREFIXES)


# --- corruption -------------------------------------------------------


def _protected_mask(unit: str) -> list[bool]:
    """Mark characters inside string literals or IRI references."""
    mask = [False] * len(unit)
    i, n = 0, len(unit)
    while i < n:
        c = unit[i]
        if c in "\"'":
            j = i + 1
            while j < n:
                if unit[j] == "\\":
                    j += 2
                    continue
                if unit[j] == c or unit[j] in "\r\n":
                    break
                j += 1
            end = min(j + 1, n)
            for p in range(i, end):
                mask[p] = True
            i = end
        elif c == "<":
            j = i + 1
            while j < n and unit[j] not in "> \t\r\n\f":
                j += 1
            end = min(j + 1, n)
            for p in range(i, end):
                mask[p] = True
            i = end
        else:
            i += 1
    return mask


def _final_dot(unit: str) -> int | None:
    mask = _protected_mask(unit)
    for p in range(len(unit) - 1, -1, -1):
        c = unit[p]
        if c in " \t\r\n\f":
            continue
        if c == "." and not mask[p]:
            return p
        return None
    return None


def _closing_quote(unit: str) -> int | None:
    i, n = 0, len(unit)
    mask = _protected_mask(unit)
    while i < n:
        if unit[i] == '"' and mask[i]:
            j = i + 1
            while j < n:
                if unit[j] == "\\":
                    j += 2
                    continue
                if unit[j] == '"':
                    return j
                j += 1
            return None
        i += 1
    return None


_PNAME_USE = re.compile(r"(?:(?<=\s)|^)([A-Za-z][A-Za-z0-9_.\-]*):")


def _pname_match(unit: str, declared: set[str]) -> re.Match[str] | None:
    mask = _protected_mask(unit)
    for m in _PNAME_USE.finditer(unit):
        if not mask[m.start(1)] and m.group(1) in declared:
            return m
    return None


def _applicable_kinds(unit: str, declared: set[str]) -> list[str]:
    if not unit.strip() or unit.lstrip().startswith("#"):
        return []
    mask = _protected_mask(unit)
    kinds: list[str] = []
    is_directive = unit.lstrip().startswith(("@prefix", "@base", "PREFIX", "BASE"))
    if _final_dot(unit) is not None:
        kinds.append("drop_statement_dot")
    if any(c in ";," and not mask[p] for p, c in enumerate(unit)):
        kinds.append("swap_semicolon_comma")
    if unit.lstrip().startswith("@prefix"):
        kinds.append("break_prefix_directive")
    if any(c == ">" and mask[p] for p, c in enumerate(unit)):
        kinds.append("delete_iri_closing_bracket")
    if _closing_quote(unit) is not None:
        kinds.append("unbalance_literal_quote")
    if not is_directive and _pname_match(unit, declared) is not None:
        kinds.append("undeclared_prefix")
    return kinds


def _apply_kind(kind: str, unit: str, declared: set[str]) -> str:
    if kind == "drop_statement_dot":
        p = _final_dot(unit)
        assert p is not None
        return unit[:p] + unit[p + 1 :]
    if kind == "swap_semicolon_comma":
        mask = _protected_mask(unit)
        for p, c in enumerate(unit):
            if c in ";," and not mask[p]:
                return unit[:p] + (";" if c == "," else ",") + unit[p + 1 :]
        raise AssertionError("no separator to swap")
    if kind == "break_prefix_directive":
        at = unit.index("@")
        return unit[:at] + unit[at + 1 :]
    if kind == "delete_iri_closing_bracket":
        mask = _protected_mask(unit)
        for p in range(len(unit) - 1, -1, -1):
            if unit[p] == ">" and mask[p]:
                return unit[:p] + unit[p + 1 :]
        raise AssertionError("no IRI bracket to delete")
    if kind == "unbalance_literal_quote":
        p = _closing_quote(unit)
        assert p is not None
        return unit[:p] + unit[p + 1 :]
    if kind == "undeclared_prefix":
        m = _pname_match(unit, declared)
        assert m is not None
        fresh = m.group(1) + "z"
        while fresh in declared:
            fresh += "z"
        return unit[: m.start(1)] + fresh + unit[m.end(1) :]
    raise ValueError(f"unknown error kind {kind!r}")


def inject_errors(doc: str, k: int, seed: int) -> tuple[str, list[ErrorInjection]]:
    """Apply k seeded manipulations to a valid document, one per statement."""
    if k < 1:
        raise SizeError("error count must be at least 1")
    declared = set(parse_turtle_strict(doc).prefixes)
    units = split_statements(doc)
    options = {i: _applicable_kinds(u, declared) for i, u in enumerate(units)}
    eligible = [i for i, kinds in options.items() if kinds]
    if len(eligible) < k:
        raise SizeError(
            f"requested {k} errors but only {len(eligible)} manipulable statements exist"
        )
    rng = random.Random(seed)
    chosen = sorted(rng.sample(eligible, k))
    log: list[ErrorInjection] = []
    corrupted_units = list(units)
    for index in chosen:
        kind = rng.choice(options[index])
        after = _apply_kind(kind, units[index], declared)
        corrupted_units[index] = after
        log.append(ErrorInjection(kind, index, units[index], after))
    return "".join(corrupted_units), log


def restore_errors(corrupted: str, log: list[ErrorInjection] | tuple[ErrorInjection, ...]) -> str:
    """Invert the logged manipulations, leftmost first."""
    text = corrupted
    cursor = 0
    for entry in sorted(log, key=lambda e: e.statement_index):
        pos = text.find(entry.after, cursor)
        if pos < 0:
            raise ValueError(
                f"log entry for statement {entry.statement_index} does not match the document"
            )
        text = text[:pos] + entry.before + text[pos + len(entry.after) :]
        cursor = pos + len(entry.before)
    return text


# --- instance lifecycle ---------------------------------------------


_TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"
_TEMPLATE_FILE = "turtle_fix_v1.txt"


def _render_template(name: str, values: Mapping[str, str]) -> str:
    text = (_TEMPLATE_DIR / name).read_text(encoding="utf-8")
    for key, value in values.items():
        text = text.replace("{" + key + "}", value)
    return text


def build_prompt(instance: TurtleFixInstance) -> str:
    return instance.prompt


def generate_instance(seed: int, size: TurtleFixSize) -> TurtleFixInstance:
    rng = random.Random(seed)
    reference = _reference_graph(rng.getrandbits(64), size.triple_count)
    doc = serialize_turtle(reference)
    reference_norm = normalize(reference)
    inject_seed = rng.getrandbits(64)
    # Rejection loop: keep the instance honest — echoing the corrupted file
    # back must never be a perfect answer.
    for attempt in range(32):
        corrupted, log = inject_errors(doc, size.error_count, inject_seed + attempt)
        try:
            reparsed = parse_turtle_strict(corrupted)
        except ParseError:
            break
        if normalize(reparsed) != reference_norm:
            break
    else:
        raise SizeError("could not produce an effective corruption for this size")
    prompt = _render_template(_TEMPLATE_FILE, {"corrupted": corrupted})
    return TurtleFixInstance(
        seed=seed,
        size=size,
        reference=reference,
        corrupted_text=corrupted,
        error_log=tuple(log),
        prompt=prompt,
    )


def evaluate(response: str, instance: TurtleFixInstance) -> TurtleFixScores:
    candidate = extract_turtle_candidate(response)
    salvaged, failed = salvage_parse_turtle(candidate)
    try:
        parse_turtle_strict(candidate)
        parsable = True
    except ParseError:
        parsable = False
    diff = triple_set_scores(normalize(salvaged), normalize(instance.reference))
    exact = diff.f1 == 1.0 and diff.fp == 0 and diff.fn == 0
    return TurtleFixScores(
        f1=diff.f1,
        precision=diff.precision,
        recall=diff.recall,
        answer_parsable=parsable,
        exact_restore=exact,
        failed_statements=failed,
    )


def export_instance(instance: TurtleFixInstance, directory: str | Path) -> None:
    """Write the instance to disk: reference.ttl, corrupted.ttl, error_log.json."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "reference.ttl").write_text(serialize_turtle(instance.reference), encoding="utf-8")
    (out / "corrupted.ttl").write_text(instance.corrupted_text, encoding="utf-8")
    entries = [dataclasses.asdict(e) for e in instance.error_log]
    (out / "error_log.json").write_text(
        json.dumps(entries, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


class TurtleFixTask(BenchmarkTask):
    task_id = "turtle-fix"
    task_version = "1.0"
    prompt_template_version = "v1"

    def default_sizes(self) -> list[dict[str, Any]]:
        return [{"triple_count": 20, "error_count": 3}]

    def make_instance(
        self, seed: int, size_index: int, size_params: Mapping[str, Any], repetition: int
    ) -> TaskInstance:
        size = TurtleFixSize(**size_params)
        inst = generate_instance(seed, size)
        return TaskInstance(
            task_id=self.task_id,
            size_index=size_index,
            size_params=dict(size_params),
            repetition=repetition,
            seed=seed,
            prompt=inst.prompt,
            payload=inst,
        )

    def evaluate(self, response: str, instance: TaskInstance) -> dict[str, Any]:
        return dataclasses.asdict(evaluate(response, instance.payload))

    def oracle_response(self, instance: TaskInstance) -> str:
        return serialize_turtle(instance.payload.reference)
