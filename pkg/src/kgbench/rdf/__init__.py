"""RDF core: data model, Turtle reader/writer, normalization and diffing."""
from .canon import NormalizedTripleSet, canonical_blank_labels, canonical_literal, normalize
from .diff import DiffScores, triple_set_scores
from .serialize import serialize_turtle
from .terms import BlankNode, Graph, Iri, Literal, Term, Triple, nt_line, nt_term
from .turtle import (
    ParseError,
    extract_turtle_candidate,
    parse_turtle_strict,
    salvage_parse_turtle,
    split_statements,
)

__all__ = [
    "BlankNode",
    "DiffScores",
    "Graph",
    "Iri",
    "Literal",
    "NormalizedTripleSet",
    "ParseError",
    "Term",
    "Triple",
    "canonical_blank_labels",
    "canonical_literal",
    "extract_turtle_candidate",
    "normalize",
    "nt_line",
    "nt_term",
    "parse_turtle_strict",
    "salvage_parse_turtle",
    "serialize_turtle",
    "split_statements",
    "triple_set_scores",
]
