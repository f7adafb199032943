"""Line-oriented text documents for every domain object.

A document starts with its kind on the first non-blank line, followed by
directive lines.  ``#`` starts a comment and tokens are separated by
whitespace.  Example::

    mvs
    elems e a b
    row e: e a b
    row a: a b a
    row b: b a b

File references (``from``, ``to``, ``mvs``) are resolved relative to the
referring document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import ElemRelation, FiniteMvs, RawTable, validate
from .errors import DocumentSemanticError, DocumentSyntaxError
from .morphisms import MvsMap
from .topology import FiniteTopology, QuasimetricTable, mask, members
from .words import Presentation

KINDS = ("mvs", "relation", "map", "quasimetric", "topology", "presentation")
NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")
TOKEN_RE = re.compile(r"->|[{}:~]|(?:[^\s{}:~-]|-(?!>))+")


@dataclass(frozen=True)
class MvsBody:
    names: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class RelationBody:
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class MapBody:
    source: str
    target: str
    sends: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class QuasimetricBody:
    points: tuple[str, ...]
    mvs: str
    rows: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class TopologyBody:
    points: tuple[str, ...]
    opens: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class PresentationBody:
    letters: tuple[str, ...]
    relations: tuple[tuple[str, str, str], ...]


@dataclass(frozen=True)
class Document:
    kind: str
    body: object


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in TOKEN_RE.finditer(line)]


class _Line:
    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.toks = _tokens(text)
        self.pos = 0

    def error(self, message: str, col: int | None = None):
        if col is None:
            col = self.toks[self.pos][1] if self.pos < len(self.toks) else (
                self.toks[-1][1] + len(self.toks[-1][0]) if self.toks else 1)
        return DocumentSyntaxError(self.lineno, col, message)

    def done(self) -> bool:
        return self.pos >= len(self.toks)

    def take(self) -> str:
        if self.done():
            raise self.error("unexpected end of line")
        tok = self.toks[self.pos][0]
        self.pos += 1
        return tok

    def expect(self, lit: str) -> None:
        if self.done() or self.toks[self.pos][0] != lit:
            raise self.error(f"expected {lit!r}")
        self.pos += 1

    def name(self) -> str:
        if self.done():
            raise self.error("expected a name")
        tok, col = self.toks[self.pos]
        if not NAME_RE.match(tok):
            raise self.error(f"invalid name {tok!r}", col)
        self.pos += 1
        return tok

    def names(self) -> list[str]:
        out = []
        while not self.done() and NAME_RE.match(self.toks[self.pos][0]):
            out.append(self.name())
        return out

    def rest_as_path(self) -> str:
        if self.done():
            raise self.error("expected a file name")
        tok = self.take()
        self.end()
        return tok

    def end(self) -> None:
        if not self.done():
            raise self.error(f"unexpected token {self.toks[self.pos][0]!r}")


def _lines(text: str) -> list[_Line]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.append(_Line(lineno, body))
    return out


def _unique(names: Sequence[str], what: str) -> tuple[str, ...]:
    if len(set(names)) != len(names):
        raise DocumentSemanticError(f"duplicate {what} names")
    return tuple(names)


def parse(text: str) -> Document:
    lines = _lines(text)
    if not lines:
        raise DocumentSyntaxError(1, 1, "empty document")
    head = lines[0]
    kind = head.take()
    if kind not in KINDS:
        raise head.error(f"unknown document kind {kind!r}", head.toks[0][1])
    head.end()
    body = _PARSERS[kind](lines[1:])
    return Document(kind, body)


def _directive(line: _Line, allowed: Sequence[str]) -> str:
    word = line.take()
    if word not in allowed:
        raise line.error(f"unknown directive {word!r}", line.toks[0][1])
    return word


def _parse_mvs(lines: list[_Line]) -> MvsBody:
    names = None
    rows: list[tuple[str, ...]] = []
    for ln in lines:
        d = _directive(ln, ("elems", "row"))
        if d == "elems":
            if names is not None:
                raise ln.error("duplicate elems line", 1)
            names = _unique(ln.names(), "element")
            ln.end()
        else:
            if names is None:
                raise ln.error("row before elems", 1)
            label = ln.name()
            ln.expect(":")
            entries = tuple(ln.names())
            ln.end()
            if len(rows) >= len(names) or label != names[len(rows)]:
                raise DocumentSemanticError(f"line {ln.lineno}: rows must follow elems order")
            rows.append(entries)
    if names is None:
        raise DocumentSemanticError("missing elems line")
    if len(names) < 1 or len(rows) != len(names) or any(len(r) != len(names) for r in rows):
        raise DocumentSemanticError("table not square")
    unknown = {x for r in rows for x in r} - set(names)
    if unknown:
        raise DocumentSemanticError(f"unknown elements {sorted(unknown)}")
    return MvsBody(names, tuple(rows))


def _parse_relation(lines: list[_Line]) -> RelationBody:
    pairs = []
    for ln in lines:
        _directive(ln, ("pairs",))
        items = ln.names()
        ln.end()
        if len(items) % 2:
            raise ln.error("pairs need an even number of names")
        pairs.extend(zip(items[::2], items[1::2]))
    return RelationBody(tuple(pairs))


def _parse_map(lines: list[_Line]) -> MapBody:
    src = tgt = None
    sends = []
    for ln in lines:
        d = _directive(ln, ("from", "to", "send"))
        if d == "from":
            src = ln.rest_as_path()
        elif d == "to":
            tgt = ln.rest_as_path()
        else:
            a = ln.name()
            ln.expect("->")
            b = ln.name()
            ln.end()
            sends.append((a, b))
    if src is None or tgt is None:
        raise DocumentSemanticError("map needs both 'from' and 'to'")
    if len({a for a, _ in sends}) != len(sends):
        raise DocumentSemanticError("element sent twice")
    return MapBody(src, tgt, tuple(sends))


def _parse_quasimetric(lines: list[_Line]) -> QuasimetricBody:
    points = None
    mvs = None
    rows = []
    for ln in lines:
        d = _directive(ln, ("points", "mvs", "row"))
        if d == "points":
            points = _unique(ln.names(), "point")
            ln.end()
        elif d == "mvs":
            mvs = ln.rest_as_path()
        else:
            if points is None:
                raise ln.error("row before points", 1)
            label = ln.name()
            ln.expect(":")
            entries = tuple(ln.names())
            ln.end()
            if len(rows) >= len(points) or label != points[len(rows)]:
                raise DocumentSemanticError(f"line {ln.lineno}: rows must follow points order")
            rows.append(entries)
    if points is None or mvs is None:
        raise DocumentSemanticError("quasimetric needs 'points' and 'mvs'")
    if len(rows) != len(points) or any(len(r) != len(points) for r in rows):
        raise DocumentSemanticError("table not square")
    return QuasimetricBody(points, mvs, tuple(rows))


def _parse_topology(lines: list[_Line]) -> TopologyBody:
    points = None
    opens = []
    for ln in lines:
        d = _directive(ln, ("points", "open"))
        if d == "points":
            points = _unique(ln.names(), "point")
            ln.end()
        else:
            ln.expect("{")
            items = tuple(ln.names())
            ln.expect("}")
            ln.end()
            opens.append(items)
    if points is None:
        raise DocumentSemanticError("topology needs 'points'")
    unknown = {x for o in opens for x in o} - set(points)
    if unknown:
        raise DocumentSemanticError(f"unknown points {sorted(unknown)}")
    return TopologyBody(points, tuple(opens))


def _parse_presentation(lines: list[_Line]) -> PresentationBody:
    letters = None
    rels = []
    for ln in lines:
        d = _directive(ln, ("letters", "rel"))
        if d == "letters":
            letters = _unique(ln.names(), "letter")
            ln.end()
        else:
            a = ln.name()
            b = ln.name()
            ln.expect("~")
            c = ln.name()
            ln.end()
            rels.append((a, b, c))
    if not letters:
        raise DocumentSemanticError("presentation needs a nonempty 'letters' line")
    unknown = {x for r in rels for x in r} - set(letters)
    if unknown:
        raise DocumentSemanticError(f"unknown letters {sorted(unknown)}")
    return PresentationBody(letters, tuple(rels))


_PARSERS = {
    "mvs": _parse_mvs,
    "relation": _parse_relation,
    "map": _parse_map,
    "quasimetric": _parse_quasimetric,
    "topology": _parse_topology,
    "presentation": _parse_presentation,
}


def serialize(doc: Document) -> str:
    b = doc.body
    out = [doc.kind]
    if doc.kind == "mvs":
        out.append("elems " + " ".join(b.names))
        out += [f"row {n}: " + " ".join(r) for n, r in zip(b.names, b.rows)]
    elif doc.kind == "relation":
        out += [f"pairs {x} {y}" for x, y in b.pairs]
    elif doc.kind == "map":
        out += [f"from {b.source}", f"to {b.target}"]
        out += [f"send {x} -> {y}" for x, y in b.sends]
    elif doc.kind == "quasimetric":
        out += ["points " + " ".join(b.points), f"mvs {b.mvs}"]
        out += [f"row {p}: " + " ".join(r) for p, r in zip(b.points, b.rows)]
    elif doc.kind == "topology":
        out.append("points " + " ".join(b.points))
        out += ["open {" + " ".join(o) + "}" for o in b.opens]
    elif doc.kind == "presentation":
        out.append("letters " + " ".join(b.letters))
        out += [f"rel {x} {y} ~ {z}" for x, y, z in b.relations]
    else:
        raise ValueError(f"unknown kind {doc.kind}")
    return "\n".join(out) + "\n"


# domain object <-> document

def mvs_document(M: FiniteMvs | RawTable) -> Document:
    n = M.names
    return Document("mvs", MvsBody(n, tuple(tuple(n[v] for v in row) for row in M.table)))


def relation_document(R: ElemRelation, M: FiniteMvs) -> Document:
    return Document("relation", RelationBody(tuple((M.names[i], M.names[j]) for i, j in R.pairs())))


def map_document(h: MvsMap, source: str, target: str) -> Document:
    sends = tuple((h.domain.names[m], h.codomain.names[v]) for m, v in enumerate(h.mapping))
    return Document("map", MapBody(source, target, sends))


def quasimetric_document(q: QuasimetricTable, mvs_path: str) -> Document:
    names = q.mvs.names
    return Document("quasimetric", QuasimetricBody(
        q.points, mvs_path, tuple(tuple(names[v] for v in row) for row in q.values)))


def topology_document(T: FiniteTopology) -> Document:
    opens = tuple(tuple(T.points[i] for i in sorted(members(u))) for u in sorted(T.opens))
    return Document("topology", TopologyBody(T.points, opens))


def presentation_document(P: Presentation) -> Document:
    return Document("presentation", PresentationBody(P.letters, P.relations))


def _expect_kind(doc: Document, kind: str) -> None:
    if doc.kind != kind:
        raise DocumentSemanticError(f"expected a {kind} document, got {doc.kind}")


def to_raw_table(doc: Document) -> RawTable:
    _expect_kind(doc, "mvs")
    b = doc.body
    idx = {x: i for i, x in enumerate(b.names)}
    return RawTable(b.names, tuple(tuple(idx[x] for x in row) for row in b.rows))


def _index(M: FiniteMvs, name: str) -> int:
    try:
        return M.index(name)
    except KeyError:
        raise DocumentSemanticError(f"unknown element {name!r}") from None


def to_relation(doc: Document, M: FiniteMvs) -> ElemRelation:
    """Exactly the listed pairs; no closure is taken."""
    _expect_kind(doc, "relation")
    return ElemRelation.from_pairs(M.size, [(_index(M, x), _index(M, y)) for x, y in doc.body.pairs])


def to_topology(doc: Document) -> FiniteTopology:
    _expect_kind(doc, "topology")
    b = doc.body
    idx = {p: i for i, p in enumerate(b.points)}
    return FiniteTopology(b.points, frozenset(mask(idx[x] for x in o) for o in b.opens))


def to_presentation(doc: Document) -> Presentation:
    _expect_kind(doc, "presentation")
    return Presentation(doc.body.letters, doc.body.relations)


def read_document(path: str | Path) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentSemanticError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def load_mvs(path: str | Path) -> FiniteMvs:
    return validate(to_raw_table(read_document(path)))


def load_map_data(path: str | Path) -> tuple[FiniteMvs, FiniteMvs, tuple[int, ...]]:
    """Domain, codomain and id mapping of a map document, without hom checks."""
    path = Path(path)
    doc = read_document(path)
    _expect_kind(doc, "map")
    b = doc.body
    dom = load_mvs(path.parent / b.source)
    cod = load_mvs(path.parent / b.target)
    sends = dict(b.sends)
    missing = [x for x in dom.names if x not in sends]
    if missing:
        raise DocumentSemanticError(f"map does not send {missing}")
    extra = [x for x in sends if x not in dom.names]
    if extra:
        raise DocumentSemanticError(f"unknown domain elements {extra}")
    return dom, cod, tuple(_index(cod, sends[x]) for x in dom.names)


def load_map(path: str | Path) -> MvsMap:
    return MvsMap(*load_map_data(path))


def load_quasimetric(path: str | Path) -> QuasimetricTable:
    path = Path(path)
    doc = read_document(path)
    _expect_kind(doc, "quasimetric")
    b = doc.body
    M = load_mvs(path.parent / b.mvs)
    return QuasimetricTable(b.points, M, tuple(tuple(_index(M, x) for x in row) for row in b.rows))


def load_topology(path: str | Path) -> FiniteTopology:
    return to_topology(read_document(path))


def load_presentation(path: str | Path) -> Presentation:
    return to_presentation(read_document(path))
