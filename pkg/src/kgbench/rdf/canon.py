"""Graph normalization: canonical literal forms and canonical blank labels.

Normalization turns a Graph into a sorted, deduplicated sequence of triples
that is identical for any two graphs differing only in blank node labels or
in the spelling of numeric/boolean literals.  Comparing two normalized sets
with plain set operations is then the whole diffing story.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterator

from .ns import XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER
from .terms import BlankNode, Graph, Literal, Term, Triple, nt_line, nt_term

__all__ = [
    "NormalizedTripleSet",
    "canonical_blank_labels",
    "canonical_literal",
    "normalize",
]

_INTEGER_LEX = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_LEX = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)\Z")
_DOUBLE_LEX = re.compile(
    r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\Z"
)


def canonical_literal(lit: Literal) -> Literal:
    """Return the literal with a canonical lexical form where one is defined.

    Integers lose redundant signs and zeros, decimals get exactly one digit
    group on each side of the point, doubles become normalized scientific
    notation, booleans become the words.  Lexical forms that are invalid
    for their datatype pass through untouched, as do all other datatypes.
    """
    if lit.language is not None:
        return lit
    dt = lit.datatype
    lex = lit.lexical
    if dt == XSD_INTEGER:
        if not _INTEGER_LEX.match(lex):
            return lit
        return Literal(str(int(lex)), datatype=dt)
    if dt == XSD_DECIMAL:
        if not _DECIMAL_LEX.match(lex):
            return lit
        return Literal(_canonical_decimal(lex), datatype=dt)
    if dt == XSD_DOUBLE:
        if lex in ("INF", "+INF", "-INF", "NaN"):
            return Literal("INF" if lex == "+INF" else lex, datatype=dt)
        if not _DOUBLE_LEX.match(lex):
            return lit
        return Literal(_canonical_double(lex), datatype=dt)
    if dt == XSD_BOOLEAN:
        if lex in ("true", "false"):
            return lit
        if lex == "1":
            return Literal("true", datatype=dt)
        if lex == "0":
            return Literal("false", datatype=dt)
        return lit
    return lit


def _canonical_decimal(lex: str) -> str:
    sign = ""
    if lex[0] in "+-":
        sign = "-" if lex[0] == "-" else ""
        lex = lex[1:]
    int_part, _, frac_part = lex.partition(".")
    int_part = int_part.lstrip("0") or "0"
    frac_part = frac_part.rstrip("0") or "0"
    if int_part == "0" and frac_part == "0":
        return "0.0"
    return f"{sign}{int_part}.{frac_part}"


def _canonical_double(lex: str) -> str:
    m = re.match(r"([+-]?[0-9.]*)(?:[eE]([+-]?[0-9]+))?\Z", lex)
    assert m is not None
    mantissa = m.group(1)
    exponent = int(m.group(2) or "0")
    negative = mantissa.startswith("-")
    mantissa = mantissa.lstrip("+-")
    int_part, _, frac_part = mantissa.partition(".")
    digits = (int_part + frac_part).lstrip("0")
    if not digits.rstrip("0"):
        return "-0.0E0" if negative else "0.0E0"
    # exponent of the leading significant digit, in d.ddd scientific form
    point = len(int_part)
    lead = len(int_part + frac_part) - len(digits)
    digits = digits.rstrip("0")
    sci_exp = exponent + (point - lead - 1)
    head, tail = digits[0], digits[1:] or "0"
    sign = "-" if negative else ""
    return f"{sign}{head}.{tail}E{sci_exp}"


def _canonical_term(term: Term) -> Term:
    if isinstance(term, Literal):
        return canonical_literal(term)
    return term


def canonical_blank_labels(g: Graph) -> dict[BlankNode, str]:
    """Assign stable labels (c0, c1, ...) to the blank nodes of a graph.

    Labels depend only on each node's position in the graph structure, not
    on the labels it arrived with: iterative signature hashing over incident
    triples, refined until the partition stops changing (at most 10 rounds),
    with residual ties ordered by a full serialization of each node's
    neighborhood.
    """
    blanks = sorted(g.blank_nodes(), key=lambda b: b.label)
    if not blanks:
        return {}

    incident: dict[BlankNode, list[tuple[str, str, Term]]] = {b: [] for b in blanks}
    for t in g:
        if isinstance(t.subject, BlankNode):
            incident[t.subject].append(("out", t.predicate.value, t.object))
        if isinstance(t.object, BlankNode):
            incident[t.object].append(("in", t.predicate.value, t.subject))

    def term_sig(term: Term, sigs: dict[BlankNode, str]) -> str:
        if isinstance(term, BlankNode):
            return sigs[term]
        return nt_term(term)

    sigs = {b: "B" for b in blanks}
    partition = None
    for _ in range(10):
        nxt: dict[BlankNode, str] = {}
        for b in blanks:
            entries = sorted(
                f"{direction}\x1e{pred}\x1e{term_sig(other, sigs)}"
                for direction, pred, other in incident[b]
            )
            payload = sigs[b] + "\x1f" + "\x1f".join(entries)
            nxt[b] = hashlib.sha256(payload.encode("utf-8")).hexdigest()
        groups: dict[str, set[BlankNode]] = {}
        for b, s in nxt.items():
            groups.setdefault(s, set()).add(b)
        new_partition = frozenset(frozenset(v) for v in groups.values())
        sigs = nxt
        if new_partition == partition:
            break
        partition = new_partition

    def tiebreak(b: BlankNode) -> str:
        lines = sorted(
            f"{direction} {pred} {term_sig(other, sigs)}"
            for direction, pred, other in incident[b]
        )
        return "\n".join(lines)

    ordered = sorted(blanks, key=lambda b: (sigs[b], tiebreak(b), b.label))
    return {b: f"c{i}" for i, b in enumerate(ordered)}


@dataclass(frozen=True)
class NormalizedTripleSet:
    """A graph reduced to comparable form: canonical triples in sorted order."""

    triples: tuple[Triple, ...]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in set(self.triples)

    def lines(self) -> tuple[str, ...]:
        """The canonical serialization, one triple per line."""
        return tuple(nt_line(t) for t in self.triples)

    def as_set(self) -> frozenset[Triple]:
        return frozenset(self.triples)


def normalize(g: Graph) -> NormalizedTripleSet:
    """Reduce a graph to its canonical, order-independent triple sequence."""
    leveled = {
        Triple(t.subject, t.predicate, _canonical_term(t.object)) for t in g
    }
    labels = canonical_blank_labels(Graph(leveled))

    def relabel(term: Term) -> Term:
        if isinstance(term, BlankNode):
            return BlankNode(labels[term])
        return term

    relabeled = {
        Triple(relabel(t.subject), t.predicate, relabel(t.object)) for t in leveled
    }
    ordered = sorted(relabeled, key=nt_line)
    return NormalizedTripleSet(tuple(ordered))
