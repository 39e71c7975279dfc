"""Value types of the pivot schema.

A record is a flat, ordered list of property assertions. Three properties
(related person, date and place) may carry a qualifier naming the agent
role or event kind, written by catalogers as a ``"Label: value"`` prefix.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union


class PivotProperty(Enum):
    """The closed set of 21 descriptive properties, in catalog order."""

    TITLE = "Title"
    ALTERNATIVE_TITLE = "AlternativeTitle"
    AUTHOR = "Author"
    TYPE_OF_DOCUMENT = "TypeOfDocument"
    LANGUAGE = "Language"
    IDENTIFIER = "Identifier"
    PHYSICAL_EXTENT = "PhysicalExtent"
    MATERIAL_INFORMATION = "MaterialInformation"
    PLACE_OF_ORIGIN = "PlaceOfOrigin"
    CREATION_DATE = "CreationDate"
    CURRENT_LOCATION = "CurrentLocation"
    CUSTODY_HISTORY = "CustodyHistory"
    PUBLISHER = "Publisher"
    OTHER_EDITIONS = "OtherEditions"
    RELATED_DATE = "RelatedDate"
    RELATED_PLACE = "RelatedPlace"
    RELATED_PERSON = "RelatedPerson"
    EXTERNAL_LINK = "ExternalLink"
    DESCRIPTION_NOTES = "DescriptionNotes"
    TYPOGRAPHY_NOTE = "TypographyNote"
    KEYWORDS = "Keywords"

    @property
    def label(self) -> str:
        """Human label as printed in catalog tables."""
        return _LABELS[self]

    @property
    def rank(self) -> int:
        return _RANK[self]

    @classmethod
    def from_name(cls, name: str) -> "PivotProperty":
        return cls(name)


_LABELS = {
    PivotProperty.TITLE: "Title",
    PivotProperty.ALTERNATIVE_TITLE: "Alternative title",
    PivotProperty.AUTHOR: "Author",
    PivotProperty.TYPE_OF_DOCUMENT: "Type of document",
    PivotProperty.LANGUAGE: "Language",
    PivotProperty.IDENTIFIER: "Identifier",
    PivotProperty.PHYSICAL_EXTENT: "Physical extent",
    PivotProperty.MATERIAL_INFORMATION: "Material information",
    PivotProperty.PLACE_OF_ORIGIN: "Place of origin",
    PivotProperty.CREATION_DATE: "Creation Date",
    PivotProperty.CURRENT_LOCATION: "Current location",
    PivotProperty.CUSTODY_HISTORY: "Custody history",
    PivotProperty.PUBLISHER: "Publisher",
    PivotProperty.OTHER_EDITIONS: "Other editions",
    PivotProperty.RELATED_DATE: "Related date",
    PivotProperty.RELATED_PLACE: "Related place",
    PivotProperty.RELATED_PERSON: "Related person",
    PivotProperty.EXTERNAL_LINK: "External link",
    PivotProperty.DESCRIPTION_NOTES: "Description / Notes",
    PivotProperty.TYPOGRAPHY_NOTE: "Typography note",
    PivotProperty.KEYWORDS: "Keywords",
}

_RANK = {prop: i for i, prop in enumerate(PivotProperty)}


class AgentRole(Enum):
    SENDER = "Sender"
    RECEIVER = "Receiver"
    CREATOR = "Creator"
    ARTIST = "Artist"
    DECEASED = "Deceased"
    MENTIONED = "Mentioned"
    DEPICTED = "Depicted"


class DateKind(Enum):
    EVENT = "Event"
    DATE_OF_DEATH = "Date of death"
    DATE_OF_FUNERAL = "Date of funeral"


class PlaceKind(Enum):
    SENDER_LOCATION = "Sender location"
    EVENT_PLACE = "Event place"


@dataclass(frozen=True)
class OtherDate:
    """Date kind outside the closed set, e.g. ``Date of birth``."""

    label: str


@dataclass(frozen=True)
class OtherPlace:
    label: str


Qualifier = Union[AgentRole, DateKind, PlaceKind, OtherDate, OtherPlace]

QUALIFIED_PROPERTIES = {
    PivotProperty.RELATED_PERSON: (AgentRole,),
    PivotProperty.RELATED_DATE: (DateKind, OtherDate),
    PivotProperty.RELATED_PLACE: (PlaceKind, OtherPlace),
}


def qualifier_text(qualifier: Qualifier) -> str:
    """The cataloger's prefix for a qualifier (``"Date of death"``)."""
    if isinstance(qualifier, (OtherDate, OtherPlace)):
        return qualifier.label
    return qualifier.value


def closed_qualifier_labels(prop: PivotProperty) -> dict[str, Qualifier]:
    """Lower-cased prefix text -> closed qualifier for ``prop``."""
    families = QUALIFIED_PROPERTIES.get(prop, ())
    return {
        member.value.lower(): member
        for family in families
        if isinstance(family, type) and issubclass(family, Enum)
        for member in family
    }


def qualifier_from_text(prop: PivotProperty, text: str, *, allow_other: bool = True) -> Qualifier | None:
    """Resolve prefix text against the qualifier kinds of ``prop``.

    Closed kinds match case-insensitively. Unknown text becomes
    ``OtherDate``/``OtherPlace`` where the property allows it, and ``None``
    otherwise (agent roles are closed).
    """
    text = text.strip()
    known = closed_qualifier_labels(prop).get(text.lower())
    if known is not None:
        return known
    if not allow_other or not text:
        return None
    if prop is PivotProperty.RELATED_DATE:
        return OtherDate(text)
    if prop is PivotProperty.RELATED_PLACE:
        return OtherPlace(text)
    return None


@dataclass(frozen=True)
class IsoDate:
    year: int
    month: int | None = None
    day: int | None = None

    def is_valid(self) -> bool:
        if not 1 <= self.year <= 9999:
            return False
        if self.month is None:
            return self.day is None
        if not 1 <= self.month <= 12:
            return False
        if self.day is None:
            return True
        try:
            datetime.date(self.year, self.month, self.day)
        except ValueError:
            return False
        return True

    def isoformat(self) -> str:
        parts = [f"{self.year:04d}"]
        if self.month is not None:
            parts.append(f"{self.month:02d}")
            if self.day is not None:
                parts.append(f"{self.day:02d}")
        return "-".join(parts)

    @classmethod
    def fromisoformat(cls, text: str) -> "IsoDate":
        pieces = text.split("-")
        if not 1 <= len(pieces) <= 3 or not all(p.isdigit() for p in pieces):
            raise ValueError(f"not an ISO date: {text!r}")
        if len(pieces[0]) != 4 or any(len(p) != 2 for p in pieces[1:]):
            raise ValueError(f"not an ISO date: {text!r}")
        numbers = [int(p) for p in pieces] + [None] * (3 - len(pieces))
        date = cls(*numbers)
        if not date.is_valid():
            raise ValueError(f"not a calendar date: {text!r}")
        return date


@dataclass(frozen=True)
class LanguageCode:
    code: str


@dataclass(frozen=True)
class CorporateName:
    """Marks an agent name as a corporate body rather than a person."""


NormalizedValue = Union[IsoDate, LanguageCode, CorporateName]


@dataclass(frozen=True)
class PropertyAssertion:
    property: PivotProperty
    value: str
    qualifier: Qualifier | None = None
    normalized: NormalizedValue | None = None

    def with_normalized(self, normalized: NormalizedValue | None) -> "PropertyAssertion":
        return replace(self, normalized=normalized)


@dataclass(frozen=True)
class PivotRecord:
    """One cultural-heritage object.

    ``digital_counterpart`` is the URL of the digitization, kept apart from
    ``EXTERNAL_LINK`` assertions which relate the physical object.
    Invariants are checked by :func:`validate_pivot`, not on construction,
    so that broken records can be inspected and reported.
    """

    record_id: str
    assertions: tuple[PropertyAssertion, ...]
    digital_counterpart: str | None = None
    extensions: tuple[tuple[str, str], ...] = field(default=())

    @classmethod
    def build(cls, assertions, digital_counterpart=None, extensions=()) -> "PivotRecord":
        """Create a record whose id mirrors its first Identifier assertion."""
        assertions = tuple(assertions)
        record_id = next(
            (a.value for a in assertions if a.property is PivotProperty.IDENTIFIER), ""
        )
        return cls(record_id, assertions, digital_counterpart, tuple(tuple(e) for e in extensions))

    def values(self, prop: PivotProperty) -> list[str]:
        return [a.value for a in self.assertions if a.property is prop]

    def first(self, prop: PivotProperty) -> PropertyAssertion | None:
        return next((a for a in self.assertions if a.property is prop), None)
