"""Line-oriented ``.ftm`` model format: parser and canonical serializer.

Example::

    model "memo"
    node alice: human
    node memo: paper
    flow write: create {
    hop alice -- memo : visual
    }

Nodes and flows may appear in any order after the header; hop endpoints
may reference nodes declared later in the file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ftm.model import (
    IDENT_RE,
    REMOTE_CHANNELS,
    CarrierKind,
    ChannelKind,
    Flow,
    Hop,
    Locality,
    Node,
    ProcessClass,
    SystemModel,
)

PARSE_ERROR_CODES = (
    "SYNTAX",
    "UNKNOWN_KIND",
    "UNKNOWN_CHANNEL",
    "UNKNOWN_CLASS",
    "INVALID_REMOTE_CHANNEL",
    "UNRESOLVED_NODE",
    "DUPLICATE_ID",
)

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}
_UNESCAPES = {v: "\\" + k for k, v in _ESCAPES.items()}

_WORD = re.compile(r"[A-Za-z0-9_]+")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, code: str, message: str):
        assert code in PARSE_ERROR_CODES, code
        self.line = line
        self.column = column
        self.code = code
        self.message = message
        super().__init__(f"{line}:{column}: {code}: {message}")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "word", "string", or the punctuation text itself
    value: str
    col: int  # 1-based


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c in " \t\f\v\r":
            i += 1
        elif c == "#":
            break
        elif c == '"':
            start = i
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise ParseError(lineno, start + 1, "SYNTAX", "unterminated string")
                c = line[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    esc = line[i + 1] if i + 1 < n else ""
                    if esc not in _ESCAPES:
                        raise ParseError(lineno, i + 1, "SYNTAX", f"invalid escape \\{esc}")
                    buf.append(_ESCAPES[esc])
                    i += 2
                else:
                    buf.append(c)
                    i += 1
            toks.append(_Tok("string", "".join(buf), start + 1))
        elif line.startswith("--", i):
            toks.append(_Tok("--", "--", i + 1))
            i += 2
        elif c in ":{}":
            toks.append(_Tok(c, c, i + 1))
            i += 1
        else:
            m = _WORD.match(line, i)
            if m is None:
                raise ParseError(lineno, i + 1, "SYNTAX", f"unexpected character {c!r}")
            toks.append(_Tok("word", m.group(), i + 1))
            i = m.end()
    return toks


class _Line:
    """Cursor over the tokens of a single line."""

    def __init__(self, toks: list[_Tok], lineno: int, text: str):
        self.toks = toks
        self.lineno = lineno
        self.pos = 0
        self.eol_col = len(text.rstrip()) + 1

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def error(self, code: str, message: str, tok: Optional[_Tok] = None) -> ParseError:
        col = tok.col if tok is not None else self.eol_col
        return ParseError(self.lineno, col, code, message)

    def expect(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = "end of line" if tok is None else repr(tok.value)
            raise self.error("SYNTAX", f"expected {what}, found {found}", tok)
        self.pos += 1
        return tok

    def ident(self, what: str) -> _Tok:
        tok = self.expect("word", what)
        if not IDENT_RE.match(tok.value):
            raise self.error("SYNTAX", f"invalid identifier {tok.value!r}", tok)
        return tok

    def keyword(self, word: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != "word" or tok.value != word:
            found = "end of line" if tok is None else repr(tok.value)
            raise self.error("SYNTAX", f"expected {word!r}, found {found}", tok)
        self.pos += 1
        return tok

    def enum(self, enum_cls, code: str, what: str):
        tok = self.expect("word", what)
        try:
            return enum_cls(tok.value), tok
        except ValueError:
            raise self.error(code, f"unknown {what} {tok.value!r}", tok) from None

    def end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise self.error("SYNTAX", f"unexpected {tok.value!r} at end of statement", tok)


@dataclass
class _HopRef:
    lineno: int
    a: _Tok
    b: _Tok
    remote: Optional[_Tok]


def parse_model(text: str) -> SystemModel:
    """Parse ``.ftm`` text. Raises ParseError on the first problem found."""
    if text.startswith("\ufeff"):
        text = text[1:]
    lines = text.split("\n")

    name: Optional[str] = None
    nodes: list[Node] = []
    node_ids: set[str] = set()
    flows: list[Flow] = []
    flow_ids: set[str] = set()
    refs: list[_HopRef] = []

    current: Optional[tuple[str, ProcessClass]] = None
    hops: list[Hop] = []

    for lineno, raw in enumerate(lines, start=1):
        toks = _tokenize(raw, lineno)
        if not toks:
            continue
        cur = _Line(toks, lineno, raw)
        head = toks[0]

        if name is None:
            cur.keyword("model")
            name = cur.expect("string", "model name string").value
            cur.end()
            continue

        if current is not None:
            if head.kind == "}":
                cur.pos += 1
                cur.end()
                flows.append(Flow(current[0], current[1], tuple(hops)))
                current, hops = None, []
                continue
            cur.keyword("hop")
            a = cur.ident("node id")
            cur.expect("--", "'--'")
            b = cur.ident("node id")
            cur.expect(":", "':'")
            remote = None
            tok = cur.peek()
            if tok is not None and tok.kind == "word" and tok.value == "remote":
                remote = tok
                cur.pos += 1
            channel, _ = cur.enum(ChannelKind, "UNKNOWN_CHANNEL", "channel")
            cur.end()
            if remote is not None and channel not in REMOTE_CHANNELS:
                raise cur.error(
                    "INVALID_REMOTE_CHANNEL",
                    f"{channel.value} channel cannot be remote", remote,
                )
            locality = Locality.REMOTE if remote is not None else Locality.LOCAL
            hops.append(Hop(a.value, b.value, channel, locality))
            refs.append(_HopRef(lineno, a, b, remote))
            continue

        if head.kind == "word" and head.value == "node":
            cur.pos += 1
            ident = cur.ident("node id")
            cur.expect(":", "':'")
            kind, _ = cur.enum(CarrierKind, "UNKNOWN_KIND", "carrier kind")
            cur.end()
            if ident.value in node_ids:
                raise cur.error("DUPLICATE_ID", f"node {ident.value!r} already declared", ident)
            node_ids.add(ident.value)
            nodes.append(Node(ident.value, kind))
        elif head.kind == "word" and head.value == "flow":
            cur.pos += 1
            ident = cur.ident("flow id")
            cur.expect(":", "':'")
            pclass, _ = cur.enum(ProcessClass, "UNKNOWN_CLASS", "process class")
            cur.expect("{", "'{'")
            cur.end()
            if ident.value in flow_ids:
                raise cur.error("DUPLICATE_ID", f"flow {ident.value!r} already declared", ident)
            flow_ids.add(ident.value)
            current = (ident.value, pclass)
        else:
            raise cur.error("SYNTAX", f"expected 'node' or 'flow', found {head.value!r}", head)

    if name is None:
        raise ParseError(1, 1, "SYNTAX", "missing 'model' header")
    if current is not None:
        raise ParseError(len(lines), len(lines[-1].rstrip()) + 1, "SYNTAX",
                         f"flow {current[0]!r} is not closed with '}}'")

    kinds = {node.id: node.kind for node in nodes}
    for ref in refs:
        for tok in (ref.a, ref.b):
            if tok.value not in kinds:
                raise ParseError(ref.lineno, tok.col, "UNRESOLVED_NODE",
                                 f"hop names undeclared node {tok.value!r}")
        if ref.remote is not None:
            bad = [t.value for t in (ref.a, ref.b) if kinds[t.value] is not CarrierKind.PROCESS]
            if bad:
                raise ParseError(ref.lineno, ref.remote.col, "INVALID_REMOTE_CHANNEL",
                                 f"remote hop endpoint {bad[0]!r} is "
                                 f"{kinds[bad[0]].value}, not process")

    return SystemModel(name, tuple(nodes), tuple(flows))


def quote(value: str) -> str:
    return '"' + "".join(_UNESCAPES.get(c, c) for c in value) + '"'


def serialize_model(model: SystemModel) -> str:
    """Canonical text: nodes then flows, each hop written with the earlier
    declared endpoint first."""
    order: dict[str, int] = {}
    for i, node in enumerate(model.nodes):
        order.setdefault(node.id, i)
    out = [f"model {quote(model.name)}"]
    for node in model.nodes:
        out.append(f"node {node.id}: {node.kind.value}")
    for flow in model.flows:
        out.append(f"flow {flow.id}: {flow.process_class.value} {{")
        for hop in flow.hops:
            a, b = hop.a, hop.b
            if order.get(b, len(order)) < order.get(a, len(order)):
                a, b = b, a
            remote = "remote " if hop.locality is Locality.REMOTE else ""
            out.append(f"hop {a} -- {b} : {remote}{hop.channel.value}")
        out.append("}")
    return "\n".join(out) + "\n"
