"""RDF data model: terms, triples and graphs.

Terms come in three variants (IRI, literal, blank node) and are immutable,
hashable values.  A graph is a set of triples plus the prefix table the
parser happened to see; the prefix table is a serialization aid and is
excluded from graph identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .ns import RDF_LANG_STRING, XSD_STRING

_IRI_FORBIDDEN = set(' \t\n\r\f<>"{}|^`')
_IRI_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        bad = _IRI_FORBIDDEN.intersection(self.value)
        if bad:
            raise ValueError(f"IRI contains forbidden characters {sorted(bad)!r}: {self.value!r}")
        if not _IRI_SCHEME.match(self.value):
            raise ValueError(f"IRI must be absolute (missing scheme): {self.value!r}")


@dataclass(frozen=True)
class Literal:
    """A literal: lexical form plus datatype IRI, or a language-tagged string.

    Plain literals get the xsd:string datatype.  A language tag forces the
    rdf:langString datatype and is lowercased on construction.
    """

    lexical: str
    datatype: str = XSD_STRING
    language: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if self.datatype not in (XSD_STRING, RDF_LANG_STRING):
                raise ValueError("a language-tagged literal cannot carry another datatype")
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", RDF_LANG_STRING)
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")
        else:
            Iri(self.datatype)  # validates the datatype IRI


@dataclass(frozen=True)
class BlankNode:
    """A blank node with a graph-scoped label."""

    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("blank node label must be non-empty")


Term = Union[Iri, Literal, BlankNode]


@dataclass(frozen=True)
class Triple:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise ValueError(f"triple subject must be an IRI or blank node, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise ValueError(f"triple predicate must be an IRI, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, Literal, BlankNode)):
            raise ValueError(f"triple object must be an RDF term, got {type(self.object).__name__}")


class Graph:
    """A finite set of triples.

    Equality and hashing cover only the triple set; the prefix table is
    carried along for serialization but has no identity.
    """

    __slots__ = ("triples", "prefixes")

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        prefixes: Mapping[str, str] | None = None,
    ) -> None:
        self.triples: frozenset[Triple] = frozenset(triples)
        self.prefixes: dict[str, str] = dict(prefixes or {})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, t: object) -> bool:
        return t in self.triples

    def __repr__(self) -> str:
        return f"Graph({len(self.triples)} triples, {len(self.prefixes)} prefixes)"

    def blank_nodes(self) -> set[BlankNode]:
        found: set[BlankNode] = set()
        for t in self.triples:
            if isinstance(t.subject, BlankNode):
                found.add(t.subject)
            if isinstance(t.object, BlankNode):
                found.add(t.object)
        return found


_STRING_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def escape_string(s: str) -> str:
    """Escape a lexical form for a quoted Turtle/N-Triples string."""
    return "".join(_STRING_ESCAPES.get(c, c) for c in s)


def nt_term(t: Term) -> str:
    """Canonical N-Triples-style rendering of a term, used for sorting and set comparison."""
    if isinstance(t, Iri):
        return f"<{t.value}>"
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    body = f'"{escape_string(t.lexical)}"'
    if t.language is not None:
        return f"{body}@{t.language}"
    if t.datatype == XSD_STRING:
        return body
    return f"{body}^^<{t.datatype}>"


def nt_line(t: Triple) -> str:
    """Canonical one-line rendering of a triple."""
    return f"{nt_term(t.subject)} {nt_term(t.predicate)} {nt_term(t.object)} ."
