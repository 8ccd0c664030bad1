"""Line-oriented N-Triples parser.

Only the features needed for OWL class-hierarchy ingestion are supported:
IRI, blank-node and literal terms (with language tag or datatype), full
string escape handling, comments and blank lines. Blank-node labels are
document-scoped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable, Union


class MalformedTriple(ValueError):
    """A line that is neither blank, a comment, nor a well-formed triple."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"malformed triple at line {line_number}: {line!r}")


@dataclass(frozen=True)
class IriRef:
    value: str


@dataclass(frozen=True)
class BlankNode:
    label: str


@dataclass(frozen=True)
class Literal:
    value: str
    lang: str | None = None
    datatype: str | None = None


Term = Union[IriRef, BlankNode, Literal]
Triple = tuple[Term, Term, Term]
TripleSet = list


_IRI = r"<(?P<{name}>[^\x00-\x20<>\"{{}}|^`]*)>"
_BLANK = r"_:(?P<{name}>[A-Za-z0-9][A-Za-z0-9_.\-]*)"
_LINE_RE = re.compile(
    r"^[ \t]*"
    + r"(?:" + _IRI.format(name="s_iri") + r"|" + _BLANK.format(name="s_blank") + r")"
    + r"[ \t]+"
    + _IRI.format(name="p_iri")
    + r"[ \t]+"
    + r"(?:"
    + _IRI.format(name="o_iri")
    + r"|"
    + _BLANK.format(name="o_blank")
    + r"|\"(?P<o_lit>(?:[^\"\\\n\r]|\\.)*)\""
    + r"(?:@(?P<o_lang>[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)|\^\^" + _IRI.format(name="o_dt") + r")?"
    + r")"
    + r"[ \t]*\.[ \t]*(?:#.*)?$"
)

_ECHARS = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")


def _unescape(raw: str, line_number: int, line: str) -> str:
    def repl(m: re.Match) -> str:
        esc = m.group(1)
        if esc[0] in "uU":
            return chr(int(esc[1:], 16))
        if esc in _ECHARS:
            return _ECHARS[esc]
        raise MalformedTriple(line_number, line)

    return _ESCAPE_RE.sub(repl, raw)


def _iter_lines(stream) -> Iterable[str]:
    for raw in stream:
        yield raw.decode("utf-8") if isinstance(raw, bytes) else raw


def parse_ntriples(stream: Union[IO[bytes], IO[str], Iterable[str]]) -> TripleSet:
    """Parse an N-Triples stream into a list of (subject, predicate, object).

    Raises MalformedTriple (with the offending line number) and aborts on the
    first line that is neither blank, a comment, nor a valid triple.
    """
    triples: TripleSet = []
    for line_number, raw in enumerate(_iter_lines(stream), start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise MalformedTriple(line_number, line)
        g = m.groupdict()
        if g["s_iri"] is not None:
            subject: Term = IriRef(_unescape(g["s_iri"], line_number, line))
        else:
            subject = BlankNode(g["s_blank"])
        predicate = IriRef(_unescape(g["p_iri"], line_number, line))
        if g["o_iri"] is not None:
            obj: Term = IriRef(_unescape(g["o_iri"], line_number, line))
        elif g["o_blank"] is not None:
            obj = BlankNode(g["o_blank"])
        else:
            obj = Literal(
                _unescape(g["o_lit"], line_number, line),
                lang=g["o_lang"],
                datatype=_unescape(g["o_dt"], line_number, line) if g["o_dt"] else None,
            )
        triples.append((subject, predicate, obj))
    return triples


def parse_ntriples_path(path: str) -> TripleSet:
    with open(path, "rb") as f:
        return parse_ntriples(f)


def escape_literal(value: str) -> str:
    """Escape a literal value for N-Triples output (tests and fixtures)."""
    out = []
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    return "".join(out)
