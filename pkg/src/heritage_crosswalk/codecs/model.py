"""Standard-neutral target trees and wire documents."""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import quote, urlsplit

from ..errors import InvalidBase
from ..pivot.validation import text_problem
from ..standards import ElementPath, MediaKind, Standard

#: First path segment of nodes a decoder could not place in the vocabulary.
UNKNOWN = "x-unknown"

DEFAULT_BASE_URI = "https://example.org/ch/"

_NCNAME = re.compile(r"^[A-Za-z_][A-Za-z0-9._-]*$")

# Children of <did>; everything else sits directly under <archdesc>.
EAD_DID_ELEMENTS = frozenset({"unittitle", "unitid", "unitdate", "physdesc", "langmaterial", "physloc"})


@dataclass(frozen=True)
class Node:
    path: ElementPath
    value: str
    annotations: tuple[tuple[str, str], ...] = ()

    @property
    def unknown(self) -> bool:
        return self.path.path[0] == UNKNOWN


@dataclass(frozen=True)
class TargetModel:
    standard: Standard
    record_uri: str
    nodes: tuple[Node, ...]

    def values(self, *names: str) -> list[str]:
        return [n.value for n in self.nodes if n.path.path == names]


@dataclass(frozen=True)
class Document:
    standard: Standard
    text: str
    media_kind: MediaKind

    @property
    def bytes(self) -> bytes:
        return self.text.encode("utf-8")


def is_absolute_uri(text: str) -> bool:
    parts = urlsplit(text)
    return bool(parts.scheme) and bool(parts.netloc or parts.path) and not any(c.isspace() for c in text)


def mint_uri(record_id: str, base: str = DEFAULT_BASE_URI) -> str:
    """Append the percent-encoded record id to ``base``.

    Every character outside the RFC 3986 unreserved set is encoded, so the
    mapping is injective and :func:`urllib.parse.unquote` reverses it.
    """
    if not base.endswith("/") or not is_absolute_uri(base):
        raise InvalidBase(f"base URI must be absolute and end in '/': {base!r}")
    return base + quote(record_id, safe="")


def _ead_section(node: Node) -> int:
    names = node.path.path
    if node.unknown:
        return 0 if len(names) > 1 and names[1] == "did" else 1
    if node.path.context is not None or names[0] in EAD_DID_ELEMENTS:
        return 0
    return 1


def canonical_order(standard: Standard, nodes) -> tuple[Node, ...]:
    """Reorder nodes the way the standard's wire format stores them.

    EAD keeps ``<did>`` content ahead of the rest of ``<archdesc>``; the
    Digital Scriptorium form groups repeated fields under one key. Relative
    order within a group is kept.
    """
    nodes = tuple(nodes)
    if standard is Standard.EAD:
        return tuple(sorted(nodes, key=_ead_section))
    if standard is Standard.DIGITAL_SCRIPTORIUM:
        first_seen: dict[tuple, int] = {}
        for node in nodes:
            first_seen.setdefault(node.path.path, len(first_seen))
        return tuple(sorted(nodes, key=lambda n: first_seen[n.path.path]))
    return nodes


def model_problems(model: TargetModel) -> list[str]:
    """Invariant violations of a target model, as messages."""
    problems = []
    if not is_absolute_uri(model.record_uri):
        problems.append(f"record URI is not absolute: {model.record_uri!r}")
    xml = model.standard.media_kind is MediaKind.XML
    for i, node in enumerate(model.nodes):
        if node.path.standard is not model.standard:
            problems.append(f"node {i}: path belongs to {node.path.standard.name}")
        if text_problem(node.value):
            problems.append(f"node {i}: unusable value {node.value!r}")
        if node.annotations and not xml:
            problems.append(f"node {i}: annotations are only carried by XML standards")
        taken = {name for name, _ in node.path.attributes} if len(node.path.path) == 1 else set()
        for name, value in node.annotations:
            if not _NCNAME.match(name) or name in taken:
                problems.append(f"node {i}: bad annotation name {name!r}")
            taken.add(name)
            if text_problem(value):
                problems.append(f"node {i}: unusable annotation value {value!r}")
    return problems
