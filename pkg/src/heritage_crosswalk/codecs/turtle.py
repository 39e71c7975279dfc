"""Dublin Core and EDM records as Turtle.

Writing keeps node order: one statement per line, subject first. Reading
uses a small parser for the Turtle subset that catalog exports use
(prefixes, base, IRIs, prefixed names, literals in all four quote styles
with language tags or datatypes, blank nodes and ``;``/``,`` lists).
RDF collections are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import urljoin

from ..errors import CodecError, InvalidPath, MalformedDocument, WrongStandard
from ..standards import ElementPath, MediaKind, Standard
from . import vocabulary as vocab
from .model import UNKNOWN, Document, Node, TargetModel, model_problems

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

NAMESPACES = {
    "dc": "http://purl.org/dc/elements/1.1/",
    "dcterms": "http://purl.org/dc/terms/",
    "edm": "http://www.europeana.eu/schemas/edm/",
}
PROVIDED_CHO = NAMESPACES["edm"] + "ProvidedCHO"
WEB_RESOURCE = NAMESPACES["edm"] + "WebResource"

_LITERAL_ESCAPES = {
    "\t": "\\t", "\b": "\\b", "\n": "\\n", "\r": "\\r", "\f": "\\f",
    '"': '\\"', "\\": "\\\\",
}
_IRI_UNSAFE = re.compile(r'[\x00-\x20<>"{}|^`\\]')


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _LITERAL_ESCAPES:
            out.append(_LITERAL_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def _iri(text: str) -> str:
    return "<" + _IRI_UNSAFE.sub(lambda m: f"\\u{ord(m.group()):04X}", text) + ">"


def expand(name: str) -> str:
    prefix, _, local = name.partition(":")
    return NAMESPACES[prefix] + local


def compact(iri: str) -> str | None:
    for prefix, ns in NAMESPACES.items():
        if iri.startswith(ns) and iri[len(ns):]:
            return f"{prefix}:{iri[len(ns):]}"
    return None


def encode_turtle(model: TargetModel) -> Document:
    problems = model_problems(model)
    if problems:
        raise CodecError(f"invalid {model.standard.name} model: {problems[0]}")
    known = vocab.vocabulary(model.standard)
    if not model.nodes and model.standard is Standard.DUBLIN_CORE:
        raise CodecError("a Dublin Core record needs at least one statement")
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in NAMESPACES.items()]
    lines.append("")
    subject = _iri(model.record_uri)
    if model.standard is Standard.EDM:
        lines.append(f"{subject} a edm:ProvidedCHO .")
    resources = []
    for node in model.nodes:
        if node.unknown or node.path not in known:
            raise InvalidPath(f"{node.path.render()} is not in the {model.standard.display_name} vocabulary")
        predicate = node.path.path[0]
        if node.path == vocab.EDM_IS_SHOWN_BY:
            lines.append(f"{subject} {predicate} {_iri(node.value)} .")
            resources.append(node.value)
        else:
            lines.append(f"{subject} {predicate} {_escape_literal(node.value)} .")
    for url in dict.fromkeys(resources):
        lines.append(f"{_iri(url)} a edm:WebResource .")
    return Document(model.standard, "\n".join(lines) + "\n", MediaKind.TURTLE)


# -- reading ---------------------------------------------------------------

_PN_PREFIX = r"[A-Za-z](?:[\w.-]*[\w-])?"
_PN_LOCAL = r"(?:[\w:%-]|\\[_~.!$&'()*+,;=/?#@%-])(?:(?:[\w.:%-]|\\[_~.!$&'()*+,;=/?#@%-])*(?:[\w:%-]|\\[_~.!$&'()*+,;=/?#@%-]))?"

_TOKENS = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iri><(?:[^<>"{}|^`\\\x00-\x20]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*>)
  | (?P<long>\"\"\"(?:[^"\\]|\\.|"(?!""))*\"\"\"|'''(?:[^'\\]|\\.|'(?!''))*''')
  | (?P<short>"(?:[^"\\\n\r]|\\.)*"|'(?:[^'\\\n\r]|\\.)*')
  | (?P<directive>@prefix\b|@base\b)
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<bnode>_:[A-Za-z0-9_](?:[\w.-]*[\w-])?)
  | (?P<number>[+-]?(?:\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+))
  | (?P<pname>(?:"""
    + _PN_PREFIX
    + r""")?:(?:"""
    + _PN_LOCAL
    + r""")?)
  | (?P<word>[A-Za-z]+)
  | (?P<punct>[.;,\[\]()])
    """,
    re.VERBOSE,
)

_ECHAR = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.DOTALL)
_ECHAR_MAP = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(text: str, where: str) -> str:
    def sub(m):
        code = m.group(1)
        if code[0] in "uU" and len(code) > 1:
            return chr(int(code[1:], 16))
        if code in _ECHAR_MAP:
            return _ECHAR_MAP[code]
        raise MalformedDocument(f"bad escape \\{code} in {where}")

    return _ECHAR.sub(sub, text)


def _unescape_iri(text: str) -> str:
    return re.sub(
        r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})",
        lambda m: chr(int(m.group(1) or m.group(2), 16)),
        text,
    )


@dataclass(frozen=True)
class Term:
    kind: str  # "iri", "bnode" or "literal"
    value: str
    lang: str | None = None
    datatype: str | None = None


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if m is None:
            line = text.count("\n", 0, pos) + 1
            raise MalformedDocument(f"unexpected input on line {line}: {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group()))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.base: str | None = None
        self.triples: list[tuple[Term, str, Term]] = []
        self._fresh = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise MalformedDocument("unexpected end of document")
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text = self.take()
        if text != value:
            raise MalformedDocument(f"expected {value!r}, found {text!r}")

    def parse(self):
        while self.peek()[0] is not None:
            kind, text = self.peek()
            if kind == "directive" or (kind == "word" and text.upper() in ("PREFIX", "BASE")):
                self.directive()
            else:
                self.statement()
        return self.triples

    def directive(self) -> None:
        kind, text = self.take()
        sparql = kind == "word"
        if text.lower().lstrip("@") == "prefix":
            kind, name = self.take()
            if kind != "pname" or not name.endswith(":") or name.count(":") != 1:
                raise MalformedDocument(f"bad prefix name {name!r}")
            self.prefixes[name[:-1]] = self.iri_token()
        else:
            self.base = self.iri_token()
        if not sparql:
            self.expect(".")

    def iri_token(self) -> str:
        kind, text = self.take()
        if kind != "iri":
            raise MalformedDocument(f"expected an IRI, found {text!r}")
        iri = _unescape_iri(text[1:-1])
        return urljoin(self.base, iri) if self.base else iri

    def resolve(self, kind: str, text: str) -> str:
        if kind == "iri":
            self.pos -= 1
            return self.iri_token()
        prefix, _, local = text.partition(":")
        if prefix not in self.prefixes:
            raise MalformedDocument(f"undeclared prefix {prefix!r}")
        return self.prefixes[prefix] + re.sub(r"\\(.)", r"\1", local)

    def fresh(self) -> Term:
        self._fresh += 1
        return Term("bnode", f"_:b{self._fresh}")

    def statement(self) -> None:
        kind, text = self.peek()
        if text == "[":
            self.take()
            subject = self.fresh()
            if self.peek()[1] != "]":
                self.predicate_objects(subject)
            self.expect("]")
            if self.peek()[1] != ".":
                self.predicate_objects(subject)
        else:
            subject = self.subject()
            self.predicate_objects(subject)
        self.expect(".")

    def subject(self) -> Term:
        kind, text = self.take()
        if kind in ("iri", "pname"):
            return Term("iri", self.resolve(kind, text))
        if kind == "bnode":
            return Term("bnode", text)
        if text == "(":
            raise MalformedDocument("RDF collections are not supported")
        raise MalformedDocument(f"unexpected {text!r} where a subject belongs")

    def predicate_objects(self, subject: Term) -> None:
        while True:
            predicate = self.verb()
            while True:
                self.object(subject, predicate)
                if self.peek()[1] != ",":
                    break
                self.take()
            if self.peek()[1] != ";":
                return
            while self.peek()[1] == ";":
                self.take()
            if self.peek()[1] in (".", "]"):
                return

    def verb(self) -> str:
        kind, text = self.take()
        if kind == "word" and text == "a":
            return RDF_TYPE
        if kind in ("iri", "pname"):
            return self.resolve(kind, text)
        raise MalformedDocument(f"unexpected {text!r} where a predicate belongs")

    def object(self, subject: Term, predicate: str) -> None:
        kind, text = self.take()
        if kind in ("iri", "pname"):
            obj = Term("iri", self.resolve(kind, text))
        elif kind == "bnode":
            obj = Term("bnode", text)
        elif kind in ("long", "short"):
            body = text[3:-3] if kind == "long" else text[1:-1]
            value = _unescape(body, "literal")
            lang = datatype = None
            nkind, ntext = self.peek()
            if nkind == "lang":
                self.take()
                lang = ntext[1:]
            elif nkind == "dtype":
                self.take()
                dkind, dtext = self.take()
                if dkind not in ("iri", "pname"):
                    raise MalformedDocument(f"bad datatype {dtext!r}")
                datatype = self.resolve(dkind, dtext)
            obj = Term("literal", value, lang, datatype)
        elif kind == "number" or (kind == "word" and text in ("true", "false")):
            obj = Term("literal", text)
        elif text == "[":
            obj = self.fresh()
            self.triples.append((subject, predicate, obj))
            if self.peek()[1] != "]":
                self.predicate_objects(obj)
            self.expect("]")
            return
        elif text == "(":
            raise MalformedDocument("RDF collections are not supported")
        else:
            raise MalformedDocument(f"unexpected {text!r} where an object belongs")
        self.triples.append((subject, predicate, obj))


def parse_turtle(text: str) -> list[tuple[Term, str, Term]]:
    """Triples of a Turtle document, in document order."""
    return _Parser(text).parse()


def _render(iri: str) -> str:
    return compact(iri) or f"<{iri}>"


def decode_turtle(document: Document | str | bytes, standard: Standard) -> TargetModel:
    text = document.text if isinstance(document, Document) else document
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"not UTF-8: {exc}") from None
    triples = parse_turtle(text)
    if not triples:
        raise WrongStandard(f"no statements for a {standard.display_name} record")

    if standard is Standard.EDM:
        subject = next(
            (s for s, p, o in triples if p == RDF_TYPE and o == Term("iri", PROVIDED_CHO)),
            None,
        )
        if subject is None:
            raise WrongStandard("no edm:ProvidedCHO in the document")
    else:
        subject = triples[0][0]
    if subject.kind != "iri":
        raise WrongStandard("the described record has no URI")

    known = vocab.vocabulary(standard)
    shown_by = vocab.EDM_IS_SHOWN_BY if standard is Standard.EDM else None
    resources = {
        o.value for s, p, o in triples
        if shown_by and s == subject and compact(p) == shown_by.path[0] and o.kind == "iri"
    }

    nodes = []
    for s, p, o in triples:
        value = o.value.strip()
        if not value:
            continue
        if s == subject:
            if standard is Standard.EDM and p == RDF_TYPE and o.value == PROVIDED_CHO:
                continue
            name = compact(p)
            path = ElementPath(standard, (name,)) if name else None
            if path is not None and path in known and (path != shown_by or o.kind == "iri"):
                nodes.append(Node(path, value))
            else:
                nodes.append(Node(ElementPath(standard, (UNKNOWN, _render(p))), value))
        elif s.kind == "iri" and s.value in resources and p == RDF_TYPE and o.value == WEB_RESOURCE:
            continue
        else:
            label = _render(s.value) if s.kind == "iri" else s.value
            nodes.append(Node(ElementPath(standard, (UNKNOWN, label, _render(p))), value))
    return TargetModel(standard, subject.value, tuple(nodes))
