"""Target standards and the element paths that address their vocabularies."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class MediaKind(Enum):
    XML = "xml"
    TURTLE = "turtle"
    JSON = "json"


class Standard(Enum):
    """The five standards, in the column order of the comparison table."""

    DUBLIN_CORE = "dc"
    EAD = "ead"
    MODS = "mods"
    EDM = "edm"
    DIGITAL_SCRIPTORIUM = "ds"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def column(self) -> str:
        """Column header used in the machine-readable coverage matrix."""
        return _COLUMNS[self]

    @property
    def media_kind(self) -> MediaKind:
        return _MEDIA[self]

    @property
    def file_suffix(self) -> str:
        return {MediaKind.XML: ".xml", MediaKind.TURTLE: ".ttl", MediaKind.JSON: ".json"}[
            self.media_kind
        ]

    @classmethod
    def parse(cls, text: str) -> "Standard":
        key = text.strip().lower().replace("-", "_").replace(" ", "_")
        for member in cls:
            if key in (member.value, member.name.lower(), member.column):
                return member
        raise ValueError(f"unknown standard: {text!r}")


_DISPLAY_NAMES = {
    Standard.DUBLIN_CORE: "Dublin Core",
    Standard.EAD: "EAD",
    Standard.MODS: "MODS",
    Standard.EDM: "EDM",
    Standard.DIGITAL_SCRIPTORIUM: "Digital Scriptorium",
}

_COLUMNS = {
    Standard.DUBLIN_CORE: "dublin_core",
    Standard.EAD: "ead",
    Standard.MODS: "mods",
    Standard.EDM: "edm",
    Standard.DIGITAL_SCRIPTORIUM: "digital_scriptorium",
}

_MEDIA = {
    Standard.DUBLIN_CORE: MediaKind.TURTLE,
    Standard.EAD: MediaKind.XML,
    Standard.MODS: MediaKind.XML,
    Standard.EDM: MediaKind.TURTLE,
    Standard.DIGITAL_SCRIPTORIUM: MediaKind.JSON,
}


@dataclass(frozen=True)
class ElementPath:
    """Address of one element, predicate or field in a standard.

    ``path`` lists nested XML element names outermost first, or holds a
    single RDF term / JSON key. ``attributes`` sit on the outermost element.
    ``context`` names a wrapper the codec places around the path (EAD
    ``origination``); it distinguishes readings of shared elements and is
    not part of the rendered cell.
    """

    standard: Standard
    path: tuple[str, ...]
    attributes: tuple[tuple[str, str], ...] = ()
    context: str | None = None

    def __post_init__(self):
        if not self.path or any(not name for name in self.path):
            raise ValueError("element path must be non-empty")
        names = [name for name, _ in self.attributes]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate attribute names in {self.path}")

    @property
    def signature(self) -> tuple:
        """Identity used when reading a node back: path, attributes, context."""
        return (self.path, self.attributes, self.context)

    def render(self) -> str:
        """Render the way the comparison table writes cells.

        XML paths open every element and close only the outermost one,
        e.g. ``<physdesc><extent></physdesc>``.
        """
        if self.standard.media_kind is not MediaKind.XML:
            return "/".join(self.path)
        attrs = "".join(f' {name}="{value}"' for name, value in self.attributes)
        head, *rest = self.path
        opened = f"<{head}{attrs}>" + "".join(f"<{name}>" for name in rest)
        return opened + (f"</{head}>" if rest else "")


def xml_path(standard: Standard, *names: str, attributes=(), context=None) -> ElementPath:
    return ElementPath(standard, tuple(names), tuple(attributes), context)


def term(standard: Standard, name: str) -> ElementPath:
    return ElementPath(standard, (name,))
