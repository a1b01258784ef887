"""Turtle reader: a strict document parser plus a statement-level salvage mode.

The supported subset covers prefix/base directives (both '@' and SPARQL
style), prefixed names, IRI references with \\u escapes, 'a', ';' and ','
abbreviations, blank node labels, [] property lists, collections, the four
string quoting forms with escapes, numeric and boolean literals, language
tags and typed literals.  Quoted graphs and non-Turtle syntaxes are out.

Strict parsing raises ParseError at the first violation.  Salvage parsing
splits the document into '.'-terminated units, parses each unit on its own
with the prefix table accumulated so far, and returns whatever parsed.
"""
from __future__ import annotations

import re
from urllib.parse import urljoin

from .ns import (
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
)
from .terms import BlankNode, Graph, Iri, Literal, Term, Triple

__all__ = [
    "ParseError",
    "parse_turtle_strict",
    "salvage_parse_turtle",
    "extract_turtle_candidate",
    "split_statements",
]


class ParseError(Exception):
    """Raised when a document is not conformant Turtle (within the supported subset)."""

    def __init__(self, message: str, line: int, col: int) -> None:
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


def _is_pn_chars_base(c: str) -> bool:
    if len(c) != 1:
        return False
    o = ord(c)
    return (
        "A" <= c <= "Z"
        or "a" <= c <= "z"
        or 0x00C0 <= o <= 0x00D6
        or 0x00D8 <= o <= 0x00F6
        or 0x00F8 <= o <= 0x02FF
        or 0x0370 <= o <= 0x037D
        or 0x037F <= o <= 0x1FFF
        or 0x200C <= o <= 0x200D
        or 0x2070 <= o <= 0x218F
        or 0x2C00 <= o <= 0x2FEF
        or 0x3001 <= o <= 0xD7FF
        or 0xF900 <= o <= 0xFDCF
        or 0xFDF0 <= o <= 0xFFFD
        or 0x10000 <= o <= 0xEFFFF
    )


def _is_pn_chars_u(c: str) -> bool:
    return c == "_" or _is_pn_chars_base(c)


def _is_pn_chars(c: str) -> bool:
    if len(c) != 1:
        return False
    o = ord(c)
    return (
        _is_pn_chars_u(c)
        or c == "-"
        or "0" <= c <= "9"
        or o == 0x00B7
        or 0x0300 <= o <= 0x036F
        or 0x203F <= o <= 0x2040
    )


_LOCAL_ESCAPABLE = set("_~.-!$&'()*+,;=/?#@%")
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_WS = " \t\r\n\f"


class _Parser:
    """Single-pass recursive-descent parser over a character cursor."""

    def __init__(
        self,
        text: str,
        prefixes: dict[str, str] | None = None,
        base: str | None = None,
        anon_labels: "_AnonLabels | None" = None,
    ) -> None:
        self.text = text
        self.n = len(text)
        self.pos = 0
        self.line = 1
        self.col = 1
        self.prefixes: dict[str, str] = prefixes if prefixes is not None else {}
        self.base = base
        self.anon = anon_labels if anon_labels is not None else _AnonLabels(text)
        self.triples: list[Triple] = []

    # --- cursor -------------------------------------------------------

    def peek(self, k: int = 0) -> str:
        j = self.pos + k
        return self.text[j] if j < self.n else ""

    def advance(self) -> str:
        if self.pos >= self.n:
            raise self.error("unexpected end of input")
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def skip_ws(self) -> None:
        while self.pos < self.n:
            c = self.text[self.pos]
            if c in _WS:
                self.advance()
            elif c == "#":
                while self.pos < self.n and self.text[self.pos] not in "\r\n":
                    self.advance()
            else:
                return

    def expect(self, c: str) -> None:
        if self.peek() != c:
            got = self.peek() or "end of input"
            raise self.error(f"expected {c!r}, found {got!r}")
        self.advance()

    def at_word(self, word: str, ci: bool = False) -> bool:
        """True when `word` sits at the cursor as a standalone keyword.

        Keywords lose to longer name tokens: 'a.b:p' is a prefixed name
        whose prefix contains a dot, not the keyword 'a' followed by junk.
        """
        chunk = self.text[self.pos : self.pos + len(word)]
        if ci:
            if chunk.lower() != word.lower():
                return False
        elif chunk != word:
            return False
        nxt = self.peek(len(word))
        if nxt == "":
            return True
        if _is_pn_chars(nxt) or nxt == ":":
            return False
        if nxt == ".":
            after = self.peek(len(word) + 1)
            if after and (after == ":" or after == "." or _is_pn_chars(after)):
                return False
        return True

    # --- document -----------------------------------------------------

    def parse_document(self) -> None:
        while True:
            self.skip_ws()
            if self.pos >= self.n:
                return
            if self.peek() == "@":
                self.parse_at_directive()
            elif self.at_word("PREFIX", ci=True):
                self.parse_sparql_prefix()
            elif self.at_word("BASE", ci=True):
                self.parse_sparql_base()
            else:
                self.parse_triples_statement()
                self.skip_ws()
                self.expect(".")

    def _at_directive(self, word: str) -> bool:
        """The '@' keywords lex like language tags: '@prefixex' is one
        longer token, not '@prefix' plus a name, so ASCII letters and '-'
        right after the keyword disqualify it."""
        if not self.text.startswith(word, self.pos):
            return False
        nxt = self.peek(len(word))
        return not ("a" <= nxt <= "z" or "A" <= nxt <= "Z" or nxt == "-")

    def parse_at_directive(self) -> None:
        if self._at_directive("@prefix"):
            for _ in range(len("@prefix")):
                self.advance()
            self.skip_ws()
            name = self.parse_prefix_name_ns()
            self.skip_ws()
            iri = self.parse_iriref()
            self.prefixes[name] = self.resolve(iri)
            self.skip_ws()
            self.expect(".")
        elif self._at_directive("@base"):
            for _ in range(len("@base")):
                self.advance()
            self.skip_ws()
            self.base = self.resolve(self.parse_iriref())
            self.skip_ws()
            self.expect(".")
        else:
            raise self.error("unknown directive (expected @prefix or @base)")

    def parse_sparql_prefix(self) -> None:
        for _ in range(6):
            self.advance()
        self.skip_ws()
        name = self.parse_prefix_name_ns()
        self.skip_ws()
        self.prefixes[name] = self.resolve(self.parse_iriref())

    def parse_sparql_base(self) -> None:
        for _ in range(4):
            self.advance()
        self.skip_ws()
        self.base = self.resolve(self.parse_iriref())

    # --- statements ---------------------------------------------------

    def parse_triples_statement(self) -> None:
        c = self.peek()
        if c == "[":
            before = len(self.triples)
            subject = self.parse_blank_node_property_list()
            self.skip_ws()
            # a bare '[]' is a plain anonymous node, not a property list,
            # so predicates after it are mandatory
            if len(self.triples) == before or self.peek() != ".":
                self.parse_predicate_object_list(subject)
        else:
            subject = self.parse_subject()
            self.skip_ws()
            self.parse_predicate_object_list(subject)

    def parse_subject(self) -> Iri | BlankNode:
        c = self.peek()
        if c == "":
            raise self.error("expected a subject, found end of input")
        if c == "(":
            return self.parse_collection()
        if c == "_" and self.peek(1) == ":":
            return self.parse_blank_node_label()
        if c in ('"', "'", "+", "-") or c.isdigit() or (c == "." and self.peek(1).isdigit()):
            raise self.error("a literal cannot be the subject of a triple")
        term = self.parse_iri()
        return term

    def parse_predicate_object_list(self, subject: Iri | BlankNode) -> None:
        while True:
            predicate = self.parse_verb()
            self.skip_ws()
            self.parse_object_list(subject, predicate)
            self.skip_ws()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.advance()
                self.skip_ws()
            if self.peek() in {".", "]", ""}:
                return

    def parse_verb(self) -> Iri:
        if self.at_word("a"):
            self.advance()
            return Iri(RDF_TYPE)
        c = self.peek()
        if c == "":
            raise self.error("expected a predicate, found end of input")
        if c == "_" and self.peek(1) == ":":
            raise self.error("a blank node cannot be the predicate of a triple")
        if c in ('"', "'") or c.isdigit():
            raise self.error("a literal cannot be the predicate of a triple")
        return self.parse_iri()

    def parse_object_list(self, subject: Iri | BlankNode, predicate: Iri) -> None:
        while True:
            obj = self.parse_object()
            self.triples.append(Triple(subject, predicate, obj))
            self.skip_ws()
            if self.peek() != ",":
                return
            self.advance()
            self.skip_ws()

    def parse_object(self) -> Term:
        c = self.peek()
        if c == "":
            raise self.error("expected an object, found end of input")
        if c == "(":
            return self.parse_collection()
        if c == "[":
            return self.parse_blank_node_property_list()
        if c == "_" and self.peek(1) == ":":
            return self.parse_blank_node_label()
        if c == "<":
            return Iri(self.resolve(self.parse_iriref()))
        if c in "\"'":
            return self.parse_rdf_literal()
        if c.isdigit() or c in "+-" or (c == "." and self.peek(1).isdigit()):
            return self.parse_numeric_literal()
        if self.at_word("true") or self.at_word("false"):
            return self.parse_boolean_literal()
        return self.parse_prefixed_name()

    # --- terms --------------------------------------------------------

    def parse_iri(self) -> Iri:
        if self.peek() == "<":
            return Iri(self.resolve(self.parse_iriref()))
        return self.parse_prefixed_name()

    def parse_iriref(self) -> str:
        start_line, start_col = self.line, self.col
        self.expect("<")
        out: list[str] = []
        while True:
            if self.pos >= self.n:
                raise ParseError("unterminated IRI reference", start_line, start_col)
            c = self.advance()
            if c == ">":
                break
            if c == "\\":
                out.append(self.parse_uchar())
                continue
            if ord(c) <= 0x20 or c in '<"{}|^`':
                raise self.error(f"character {c!r} is not allowed inside an IRI reference")
            out.append(c)
        value = "".join(out)
        for ch in value:
            if ord(ch) <= 0x20 or ch in '<>"{}|^`\\':
                raise ParseError(
                    f"escaped character {ch!r} is not allowed inside an IRI reference",
                    start_line,
                    start_col,
                )
        return value

    def parse_uchar(self) -> str:
        c = self.peek()
        if c == "u":
            self.advance()
            return self.read_hex(4)
        if c == "U":
            self.advance()
            return self.read_hex(8)
        raise self.error(f"invalid IRI escape '\\{c}'")

    def read_hex(self, count: int) -> str:
        digits = []
        for _ in range(count):
            c = self.peek()
            if c not in "0123456789abcdefABCDEF":
                raise self.error("invalid unicode escape")
            digits.append(self.advance())
        code = int("".join(digits), 16)
        if code > 0x10FFFF:
            raise self.error("unicode escape out of range")
        return chr(code)

    def resolve(self, iri: str) -> str:
        if _SCHEME_RE.match(iri):
            return iri
        if self.base is None:
            raise self.error(f"relative IRI <{iri}> used without a base")
        return urljoin(self.base, iri)

    def _dot_continues(self, extra: tuple[str, ...] = ()) -> bool:
        """At a '.', decide whether the dot run stays inside the name.

        Dots may sit inside prefix, local, and blank labels but never at
        the end, so the whole run counts only when the char after it can
        continue the token.
        """
        j = 1
        while self.peek(j) == ".":
            j += 1
        after = self.peek(j)
        return bool(after) and (_is_pn_chars(after) or after in extra)

    def parse_prefix_name_ns(self) -> str:
        """The PNAME_NS of a prefix declaration: a possibly-empty prefix plus ':'."""
        name = []
        c = self.peek()
        if c != ":":
            if not _is_pn_chars_base(c):
                raise self.error("expected a prefix name")
            name.append(self.advance())
            while True:
                c = self.peek()
                if _is_pn_chars(c):
                    name.append(self.advance())
                elif c == "." and self._dot_continues():
                    name.append(self.advance())
                else:
                    break
        self.expect(":")
        return "".join(name)

    def parse_prefixed_name(self) -> Iri:
        start_line, start_col = self.line, self.col
        prefix_chars: list[str] = []
        c = self.peek()
        if c != ":":
            if not _is_pn_chars_base(c):
                raise self.error(f"unexpected character {c!r}")
            prefix_chars.append(self.advance())
            while True:
                c = self.peek()
                if _is_pn_chars(c):
                    prefix_chars.append(self.advance())
                elif c == "." and self._dot_continues():
                    prefix_chars.append(self.advance())
                else:
                    break
        if self.peek() != ":":
            raise self.error(f"unexpected token {''.join(prefix_chars)!r}")
        self.advance()
        prefix = "".join(prefix_chars)
        if prefix not in self.prefixes:
            raise ParseError(f"undefined prefix '{prefix}:'", start_line, start_col)
        local = self.parse_pn_local()
        return Iri(self.prefixes[prefix] + local)

    def parse_pn_local(self) -> str:
        out: list[str] = []
        c = self.peek()
        if not (_is_pn_chars_u(c) or c == ":" or c.isdigit() or c == "%" or c == "\\"):
            return ""
        while True:
            c = self.peek()
            if c == "%":
                h = self.peek(1) + self.peek(2)
                if len(h) == 2 and all(x in "0123456789abcdefABCDEF" for x in h):
                    out.append(self.advance())
                    out.append(self.advance())
                    out.append(self.advance())
                    continue
                raise self.error("'%' in a local name must start a percent-encoded octet")
            if c == "\\":
                esc = self.peek(1)
                if esc in _LOCAL_ESCAPABLE:
                    self.advance()
                    out.append(self.advance())
                    continue
                raise self.error(f"invalid local name escape '\\{esc}'")
            if _is_pn_chars(c) or c == ":":
                out.append(self.advance())
                continue
            if c == "." and self._dot_continues((":", "%", "\\")):
                out.append(self.advance())
                continue
            break
        return "".join(out)

    def parse_blank_node_label(self) -> BlankNode:
        self.advance()  # '_'
        self.expect(":")
        c = self.peek()
        if not (_is_pn_chars_u(c) or c.isdigit()):
            raise self.error("blank node label must start with a letter, digit or '_'")
        out = [self.advance()]
        while True:
            c = self.peek()
            if _is_pn_chars(c):
                out.append(self.advance())
            elif c == "." and self._dot_continues():
                out.append(self.advance())
            else:
                break
        return BlankNode("".join(out))

    def parse_blank_node_property_list(self) -> BlankNode:
        self.expect("[")
        node = self.anon.fresh()
        self.skip_ws()
        if self.peek() == "]":
            self.advance()
            return node
        self.parse_predicate_object_list(node)
        self.skip_ws()
        self.expect("]")
        return node

    def parse_collection(self) -> Iri | BlankNode:
        self.expect("(")
        items: list[Term] = []
        while True:
            self.skip_ws()
            if self.peek() == ")":
                self.advance()
                break
            if self.pos >= self.n:
                raise self.error("unterminated collection")
            items.append(self.parse_object())
        if not items:
            return Iri(RDF_NIL)
        head = self.anon.fresh()
        node = head
        for i, item in enumerate(items):
            self.triples.append(Triple(node, Iri(RDF_FIRST), item))
            if i + 1 < len(items):
                nxt = self.anon.fresh()
                self.triples.append(Triple(node, Iri(RDF_REST), nxt))
                node = nxt
            else:
                self.triples.append(Triple(node, Iri(RDF_REST), Iri(RDF_NIL)))
        return head

    # --- literals -----------------------------------------------------

    def parse_rdf_literal(self) -> Literal:
        lexical = self.parse_string()
        # language tags and '^^' are separate tokens, so whitespace may
        # sit between them and the string
        self.skip_ws()
        if self.peek() == "@":
            self.advance()
            tag = self.parse_langtag()
            return Literal(lexical, language=tag)
        if self.peek() == "^" and self.peek(1) == "^":
            self.advance()
            self.advance()
            self.skip_ws()
            dt = self.parse_iri()
            return Literal(lexical, datatype=dt.value)
        return Literal(lexical)

    def parse_langtag(self) -> str:
        out = []
        c = self.peek()
        if not c.isalpha() or not c.isascii():
            raise self.error("language tag must start with a letter")
        while self.peek().isascii() and self.peek().isalpha():
            out.append(self.advance())
        while self.peek() == "-":
            out.append(self.advance())
            if not (self.peek().isascii() and self.peek().isalnum()):
                raise self.error("language subtag must be alphanumeric")
            while self.peek().isascii() and self.peek().isalnum():
                out.append(self.advance())
        tag = "".join(out)
        # '@prefix' and '@base' always lex as directive keywords
        if tag in ("prefix", "base"):
            raise self.error(f"'@{tag}' is a directive keyword, not a language tag")
        return tag

    def parse_string(self) -> str:
        q = self.peek()
        if self.text.startswith(q * 3, self.pos):
            return self.parse_long_string(q)
        start_line, start_col = self.line, self.col
        self.advance()
        out: list[str] = []
        while True:
            if self.pos >= self.n:
                raise ParseError("unterminated string literal", start_line, start_col)
            c = self.peek()
            if c == q:
                self.advance()
                return "".join(out)
            if c in "\r\n":
                raise ParseError("newline inside single-quoted string", start_line, start_col)
            if c == "\\":
                self.advance()
                out.append(self.parse_string_escape())
            else:
                out.append(self.advance())

    def parse_long_string(self, q: str) -> str:
        start_line, start_col = self.line, self.col
        for _ in range(3):
            self.advance()
        out: list[str] = []
        while True:
            if self.pos >= self.n:
                raise ParseError("unterminated long string literal", start_line, start_col)
            if self.text.startswith(q * 3, self.pos):
                for _ in range(3):
                    self.advance()
                return "".join(out)
            c = self.peek()
            if c == "\\":
                self.advance()
                out.append(self.parse_string_escape())
            else:
                out.append(self.advance())

    def parse_string_escape(self) -> str:
        c = self.peek()
        simple = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
        if c in simple:
            self.advance()
            return simple[c]
        if c == "u":
            self.advance()
            return self.read_hex(4)
        if c == "U":
            self.advance()
            return self.read_hex(8)
        raise self.error(f"invalid string escape '\\{c}'")

    def parse_numeric_literal(self) -> Literal:
        out: list[str] = []
        if self.peek() in ("+", "-"):
            out.append(self.advance())
        int_digits = 0
        while self.peek().isdigit():
            out.append(self.advance())
            int_digits += 1
        frac_digits = 0
        if self.peek() == "." and self.peek(1).isdigit():
            out.append(self.advance())
            while self.peek().isdigit():
                out.append(self.advance())
                frac_digits += 1
        # '1.E3' is a double with an empty fraction; consume the dot only
        # when a well-formed exponent actually follows
        dot_before_exp = None
        if not frac_digits and int_digits and self.peek() == "." and self.peek(1) in ("e", "E"):
            dot_before_exp = self.pos, self.line, self.col
            out.append(self.advance())
        has_exp = False
        if self.peek() in ("e", "E") and (int_digits or frac_digits):
            save = self.pos, self.line, self.col
            exp = [self.advance()]
            if self.peek() in ("+", "-"):
                exp.append(self.advance())
            if self.peek().isdigit():
                while self.peek().isdigit():
                    exp.append(self.advance())
                out.extend(exp)
                has_exp = True
            else:
                self.pos, self.line, self.col = save
        if dot_before_exp is not None and not has_exp:
            self.pos, self.line, self.col = dot_before_exp
            out.pop()
        if not (int_digits or frac_digits):
            raise self.error("malformed numeric literal")
        lexical = "".join(out)
        if has_exp:
            return Literal(lexical, datatype=XSD_DOUBLE)
        if frac_digits:
            return Literal(lexical, datatype=XSD_DECIMAL)
        return Literal(lexical, datatype=XSD_INTEGER)

    def parse_boolean_literal(self) -> Literal:
        word = "true" if self.at_word("true") else "false"
        for _ in range(len(word)):
            self.advance()
        return Literal(word, datatype=XSD_BOOLEAN)


class _AnonLabels:
    """Fresh blank labels for [] and collections, dodging labels in the document."""

    def __init__(self, text: str) -> None:
        self.reserved = set(re.findall(r"_:([^\s<>\"'(),;\[\]#]+)", text))
        self.counter = 0

    def fresh(self) -> BlankNode:
        while True:
            label = f"gen{self.counter}"
            self.counter += 1
            if label not in self.reserved:
                return BlankNode(label)


def parse_turtle_strict(text: str) -> Graph:
    """Parse a full Turtle document; raise ParseError on the first violation."""
    p = _Parser(text)
    p.parse_document()
    return Graph(p.triples, p.prefixes)


# --- salvage mode -----------------------------------------------------


def split_statements(text: str) -> list[str]:
    """Split a document into '.'-terminated units whose concatenation is the input.

    A '.' terminates a unit when it sits outside strings, IRI references,
    comments and bracket pairs, and is followed by whitespace, a comment or
    the end of input.  Malformed string/IRI contexts are abandoned at the
    first newline (strings) or whitespace (IRIs) so one broken statement
    cannot swallow the rest of the document.
    """
    units: list[str] = []
    start = 0
    i = 0
    n = len(text)
    depth = 0
    while i < n:
        c = text[i]
        if c == "#":
            while i < n and text[i] not in "\r\n":
                i += 1
            continue
        if c in "\"'":
            if text.startswith(c * 3, i):
                end = text.find(c * 3, i + 3)
                while end != -1 and _escaped(text, end):
                    end = text.find(c * 3, end + 1)
                i = n if end == -1 else end + 3
                continue
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == c or text[j] in "\r\n":
                    break
                j += 1
            i = min(j + 1, n)
            continue
        if c == "<":
            j = i + 1
            while j < n and text[j] not in "> \t\r\n\f":
                j += 1
            i = min(j + 1, n)
            continue
        if c in "[(":
            depth += 1
        elif c in "])":
            depth = max(0, depth - 1)
        elif c == "." and depth == 0:
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "" or nxt in _WS or nxt == "#":
                units.append(text[start : i + 1])
                start = i + 1
        i += 1
    if start < n:
        units.append(text[start:])
    return units


def _escaped(text: str, pos: int) -> bool:
    backslashes = 0
    j = pos - 1
    while j >= 0 and text[j] == "\\":
        backslashes += 1
        j -= 1
    return backslashes % 2 == 1


_BLANK_UNIT_RE = re.compile(r"\A(?:\s|#[^\r\n]*)*\Z")


def salvage_parse_turtle(text: str) -> tuple[Graph, int]:
    """Parse what can be parsed, statement by statement.

    Returns the union of triples from units that parse plus the count of
    units that failed.  Prefix and base directives take effect for later
    units even when a unit fails after declaring them.
    """
    prefixes: dict[str, str] = {}
    base: str | None = None
    anon = _AnonLabels(text)
    triples: set[Triple] = set()
    failed = 0
    for unit in split_statements(text):
        if _BLANK_UNIT_RE.match(unit):
            continue
        p = _Parser(unit, prefixes=prefixes, base=base, anon_labels=anon)
        try:
            p.parse_document()
        except ParseError:
            failed += 1
        else:
            triples.update(p.triples)
        base = p.base
    return Graph(triples, prefixes), failed


_FENCE_RE = re.compile(r"^\s{0,3}```")


def extract_turtle_candidate(response: str) -> str:
    """Pick the most promising Turtle content out of a model response.

    With fenced code blocks present, the block whose salvage parse yields
    the most triples wins; ties keep the first block.  Without fences the
    whole response is the candidate.
    """
    blocks: list[str] = []
    current: list[str] | None = None
    for line in response.splitlines(keepends=True):
        if _FENCE_RE.match(line):
            if current is None:
                current = []
            else:
                blocks.append("".join(current))
                current = None
            continue
        if current is not None:
            current.append(line)
    if current is not None:
        blocks.append("".join(current))
    if not blocks:
        return response
    best = blocks[0]
    best_count = -1
    for block in blocks:
        graph, _ = salvage_parse_turtle(block)
        if len(graph) > best_count:
            best, best_count = block, len(graph)
    return best
