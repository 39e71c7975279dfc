"""EAD and MODS documents.

Each node becomes its own element chain: ``physdesc/extent`` is written as
``<physdesc><extent>4 pages</extent></physdesc>`` and sibling nodes are
never merged. EAD content goes into ``archdesc/did`` or directly under
``archdesc``; a node whose path has a context (``origination``) gets that
wrapper. The record URI travels as ``xml:base`` on the root element.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from urllib.parse import quote

from ..errors import CodecError, InvalidPath, MalformedDocument, WrongStandard
from ..standards import ElementPath, MediaKind, Standard
from . import vocabulary as vocab
from .model import (
    DEFAULT_BASE_URI,
    EAD_DID_ELEMENTS,
    UNKNOWN,
    Document,
    Node,
    TargetModel,
    canonical_order,
    model_problems,
)

EAD_NS = "urn:isbn:1-931666-22-9"
MODS_NS = "http://www.loc.gov/mods/v3"
XML_BASE = "{http://www.w3.org/XML/1998/namespace}base"
XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'

# Common MODS child elements read as the bare element the crosswalk uses.
_MODS_READ_ALIASES = {
    ("titleInfo", "title"): ("titleInfo",),
    ("name", "namePart"): ("name",),
    ("language", "languageTerm"): ("language",),
    ("physicalDescription", "extent"): ("physicalDescription",),
    ("subject", "topic"): ("subject",),
}

# Identifier elements used to mint a record URI when xml:base is absent.
_ID_PATHS = {Standard.EAD: ("unitid",), Standard.MODS: ("identifier",)}


@dataclass(frozen=True)
class _Layout:
    root: str
    namespace: str


_LAYOUTS = {
    Standard.EAD: _Layout("ead", EAD_NS),
    Standard.MODS: _Layout("mods", MODS_NS),
}


def _split_tag(tag: str) -> tuple[str | None, str]:
    if tag.startswith("{"):
        ns, _, local = tag[1:].partition("}")
        return ns, local
    return None, tag


def _check_encodable(model: TargetModel) -> None:
    problems = model_problems(model)
    if problems:
        raise CodecError(f"invalid {model.standard.name} model: {problems[0]}")
    known = vocab.vocabulary(model.standard)
    for node in model.nodes:
        if node.unknown or node.path not in known:
            raise InvalidPath(f"{node.path.render()} is not in the {model.standard.display_name} vocabulary")
        # An annotation must not read back as a path attribute.
        reserved = {k for p in known if p.path == node.path.path for k, _ in p.attributes}
        for name, _ in node.annotations:
            if name in reserved or name.lower().startswith("xml"):
                raise CodecError(f"annotation name {name!r} is reserved on {node.path.render()}")


def _append_chain(parent: ET.Element, node: Node) -> None:
    if node.path.context:
        parent = ET.SubElement(parent, node.path.context)
    head, *rest = node.path.path
    leaf = ET.SubElement(parent, head, dict(node.path.attributes))
    for name in rest:
        leaf = ET.SubElement(leaf, name)
    for name, value in node.annotations:
        leaf.set(name, value)
    leaf.text = node.value


def encode_xml(model: TargetModel) -> Document:
    _check_encodable(model)
    layout = _LAYOUTS[model.standard]
    root = ET.Element(layout.root)
    # Literal xmlns keeps unprefixed element and attribute names.
    root.set("xmlns", layout.namespace)
    root.set(XML_BASE, model.record_uri)

    if model.standard is Standard.EAD:
        archdesc = ET.SubElement(root, "archdesc", {"level": "item"})
        did = ET.SubElement(archdesc, "did")
        for node in canonical_order(model.standard, model.nodes):
            in_did = node.path.context is not None or node.path.path[0] in EAD_DID_ELEMENTS
            _append_chain(did if in_did else archdesc, node)
    else:
        for node in model.nodes:
            _append_chain(root, node)

    ET.indent(root, "  ")
    text = XML_DECLARATION + ET.tostring(root, encoding="unicode") + "\n"
    return Document(model.standard, text, MediaKind.XML)


class _Reader:
    def __init__(self, standard: Standard, namespace: str):
        self.standard = standard
        self.namespace = namespace
        self.nodes: list[Node] = []

    def _local(self, elem: ET.Element) -> str | None:
        ns, local = _split_tag(elem.tag)
        if ns not in (None, self.namespace):
            return None
        return local

    @staticmethod
    def _plain_attributes(elem: ET.Element) -> dict[str, str]:
        return {k: v for k, v in elem.attrib.items() if not k.startswith("{")}

    def unknown(self, elem: ET.Element, location: tuple[str, ...]) -> None:
        """Keep every text-bearing descendant under the unknown prefix."""
        names = location + (self._local(elem) or elem.tag,)
        text = (elem.text or "").strip()
        if text:
            self.nodes.append(Node(ElementPath(self.standard, (UNKNOWN,) + names), text))
        for child in elem:
            self.unknown(child, names)

    def visit(self, elem, prefix=(), location=(), context=None, outer=None) -> None:
        local = self._local(elem)
        if local is None:
            self.unknown(elem, location + prefix)
            return
        names = prefix + (local,)
        attrs = self._plain_attributes(elem)
        outer = attrs if outer is None else outer
        text = (elem.text or "").strip()
        children = list(elem)

        if children:
            own = vocab.lookup(self.standard, names, outer, context)
            if names not in vocab.path_prefixes(self.standard) and own is None:
                self.unknown(elem, location + prefix)
                return
            if text and own is not None:
                self.nodes.append(Node(own, text))
            for child in children:
                self.visit(child, names, location, context, outer)
            return

        if not text:
            return
        path = vocab.lookup(self.standard, names, outer, context)
        if path is None and self.standard is Standard.MODS and names in _MODS_READ_ALIASES:
            path = vocab.lookup(self.standard, _MODS_READ_ALIASES[names], outer, context)
        if path is None:
            self.nodes.append(Node(ElementPath(self.standard, (UNKNOWN,) + location + names), text))
            return
        path_attrs = dict(path.attributes)
        annotations = tuple(
            (k, v) for k, v in attrs.items() if not (len(names) == 1 and k in path_attrs)
        )
        self.nodes.append(Node(path, text, annotations))


def _parse_root(document: Document | str | bytes) -> ET.Element:
    text = document.text if isinstance(document, Document) else document
    try:
        return ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedDocument(f"not well-formed XML: {exc}") from None


def decode_xml(document: Document | str | bytes, standard: Standard) -> TargetModel:
    layout = _LAYOUTS[standard]
    root = _parse_root(document)
    ns, local = _split_tag(root.tag)
    if standard is Standard.MODS and local == "modsCollection" and ns in (None, MODS_NS):
        first = next((c for c in root if _split_tag(c.tag)[1] == "mods"), None)
        if first is None:
            raise WrongStandard("modsCollection holds no mods record")
        root, (ns, local) = first, _split_tag(first.tag)
    if local != layout.root or ns not in (None, layout.namespace):
        raise WrongStandard(f"expected a {standard.display_name} <{layout.root}> root, found {root.tag!r}")

    reader = _Reader(standard, ns or layout.namespace) if ns else _Reader(standard, None)
    if standard is Standard.EAD:
        _read_ead(reader, root)
    else:
        for child in root:
            reader.visit(child)

    nodes = canonical_order(standard, reader.nodes)
    record_uri = root.get(XML_BASE) or _fallback_uri(standard, nodes)
    return TargetModel(standard, record_uri, nodes)


def _read_ead(reader: _Reader, root: ET.Element) -> None:
    for child in root:
        if reader._local(child) != "archdesc":
            reader.unknown(child, ())
            continue
        for part in child:
            if reader._local(part) != "did":
                reader.visit(part)
                continue
            for item in part:
                if reader._local(item) == "origination":
                    for name in item:
                        reader.visit(name, location=("did", "origination"), context="origination")
                else:
                    reader.visit(item, location=("did",))


def _fallback_uri(standard: Standard, nodes) -> str:
    ident = next((n.value for n in nodes if n.path.path == _ID_PATHS[standard]), None)
    if ident is None:
        return "urn:x-crosswalk:unidentified"
    return DEFAULT_BASE_URI + quote(ident, safe="")
