"""Deterministic Turtle writer.

The output is stable for a given graph: subjects, predicates and objects
are emitted in sorted order, one subject block per statement, with ';' and
',' abbreviations.  Reparsing the output yields a graph with the same
normalized triple set (blank labels may shift, nothing else does).
"""
from __future__ import annotations

import re

from .ns import RDF_LANG_STRING, RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER, XSD_STRING
from .terms import BlankNode, Graph, Iri, Literal, Term, Triple, escape_string
from .turtle import _is_pn_chars, _is_pn_chars_base, _is_pn_chars_u

__all__ = ["serialize_turtle"]

_BARE_INTEGER = re.compile(r"[+-]?[0-9]+\Z")
_BARE_DECIMAL = re.compile(r"[+-]?[0-9]*\.[0-9]+\Z")
_BARE_DOUBLE = re.compile(
    r"[+-]?(?:[0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)[eE][+-]?[0-9]+\Z"
)


def _valid_local(local: str) -> bool:
    if not local:
        return True
    first = local[0]
    if not (_is_pn_chars_u(first) or first.isdigit()):
        return False
    if local[-1] == ".":
        return False
    return all(_is_pn_chars(c) or c == "." for c in local[1:])


def _valid_blank_label(label: str) -> bool:
    first = label[0]
    if not (_is_pn_chars_u(first) or first.isdigit()):
        return False
    if len(label) > 1:
        if not _is_pn_chars(label[-1]):
            return False
        if not all(_is_pn_chars(c) or c == "." for c in label[1:-1]):
            return False
    return True


def _valid_prefix_name(name: str) -> bool:
    if name == "":
        return True
    if not _is_pn_chars_base(name[0]):
        return False
    if len(name) > 1:
        if not _is_pn_chars(name[-1]):
            return False
        if not all(_is_pn_chars(c) or c == "." for c in name[1:-1]):
            return False
    return True


class _Writer:
    def __init__(self, g: Graph) -> None:
        self.prefixes = {
            name: iri for name, iri in g.prefixes.items() if _valid_prefix_name(name)
        }
        self.used: set[str] = set()
        self.blank_names = self._relabel(g)

    def _relabel(self, g: Graph) -> dict[str, str]:
        labels = sorted(node.label for node in g.blank_nodes())
        names: dict[str, str] = {}
        taken = {lbl for lbl in labels if _valid_blank_label(lbl)}
        counter = 0
        for label in labels:
            if _valid_blank_label(label):
                names[label] = label
                continue
            while True:
                fresh = f"r{counter}"
                counter += 1
                if fresh not in taken:
                    taken.add(fresh)
                    names[label] = fresh
                    break
        return names

    def iri(self, term: Iri) -> str:
        best: tuple[int, str, str] | None = None
        for name, expansion in self.prefixes.items():
            if not term.value.startswith(expansion):
                continue
            local = term.value[len(expansion) :]
            if not _valid_local(local):
                continue
            key = (len(expansion), name, local)
            if best is None or key > best:
                best = key
        if best is not None:
            _, name, local = best
            self.used.add(name)
            return f"{name}:{local}"
        return f"<{term.value}>"

    def literal(self, term: Literal) -> str:
        if term.language is not None:
            return f'"{escape_string(term.lexical)}"@{term.language}'
        dt = term.datatype
        if dt == XSD_STRING:
            return f'"{escape_string(term.lexical)}"'
        if dt == XSD_INTEGER and _BARE_INTEGER.match(term.lexical):
            return term.lexical
        if dt == XSD_DECIMAL and _BARE_DECIMAL.match(term.lexical):
            return term.lexical
        if dt == XSD_DOUBLE and _BARE_DOUBLE.match(term.lexical):
            return term.lexical
        if dt == XSD_BOOLEAN and term.lexical in ("true", "false"):
            return term.lexical
        return f'"{escape_string(term.lexical)}"^^{self.iri(Iri(dt))}'

    def term(self, term: Term) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, BlankNode):
            return f"_:{self.blank_names[term.label]}"
        return self.literal(term)

    def predicate(self, term: Iri) -> str:
        if term.value == RDF_TYPE:
            return "a"
        return self.iri(term)


def _subject_key(term: Iri | BlankNode) -> tuple[int, str]:
    if isinstance(term, Iri):
        return (0, term.value)
    return (1, term.label)


def _predicate_key(term: Iri) -> tuple[int, str]:
    return (0, "") if term.value == RDF_TYPE else (1, term.value)


def _object_key(term: Term) -> tuple[int, str, str, str]:
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype, term.language or "")


def serialize_turtle(g: Graph) -> str:
    """Render a graph as Turtle text.  Output is deterministic per graph."""
    w = _Writer(g)
    by_subject: dict[Iri | BlankNode, dict[Iri, list[Term]]] = {}
    for triple in g:
        by_subject.setdefault(triple.subject, {}).setdefault(triple.predicate, []).append(
            triple.object
        )

    blocks: list[str] = []
    for subject in sorted(by_subject, key=_subject_key):
        parts: list[str] = []
        predicates = by_subject[subject]
        for predicate in sorted(predicates, key=_predicate_key):
            objects = sorted(set(predicates[predicate]), key=_object_key)
            rendered = ", ".join(w.term(o) for o in objects)
            parts.append(f"{w.predicate(predicate)} {rendered}")
        lines = [f"{w.term(subject)} {parts[0]}"]
        lines.extend(f"    {p}" for p in parts[1:])
        blocks.append(" ;\n".join(lines) + " .")

    header = [
        f"@prefix {name}: <{w.prefixes[name]}> ."
        for name in sorted(w.used)
    ]
    sections = []
    if header:
        sections.append("\n".join(header))
    if blocks:
        sections.append("\n\n".join(blocks))
    if not sections:
        return ""
    return "\n\n".join(sections) + "\n"
