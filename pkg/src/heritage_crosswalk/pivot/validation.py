"""Record-level invariant checks.

Violations are returned, never raised; :func:`parse_pivot` turns them into
:class:`~heritage_crosswalk.errors.SchemaViolation`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import urlsplit

from .model import (
    QUALIFIED_PROPERTIES,
    CorporateName,
    IsoDate,
    LanguageCode,
    OtherDate,
    OtherPlace,
    PivotProperty,
    PivotRecord,
    closed_qualifier_labels,
)

# Rule identifiers reported in Violation.rule.
TITLE_CARDINALITY = "title-cardinality"
IDENTIFIER_CARDINALITY = "identifier-cardinality"
RECORD_ID_MIRROR = "record-id-mirror"
EMPTY_VALUE = "empty-value"
VALUE_WHITESPACE = "value-whitespace"
VALUE_CHARACTERS = "value-characters"
QUALIFIER_PLACEMENT = "qualifier-placement"
OTHER_LABEL = "other-label"
NORMALIZED_PLACEMENT = "normalized-placement"
NORMALIZED_CONSISTENCY = "normalized-consistency"
DIGITAL_COUNTERPART_URL = "digital-counterpart-url"
DIGITAL_COUNTERPART_DISTINCT = "digital-counterpart-distinct"
EXTENSION_KEY = "extension-key"
EXTENSION_VALUE = "extension-value"

# XML 1.0 Char minus carriage return (which XML parsers rewrite).
_FORBIDDEN_CHARS = re.compile("[^\t\n\x20-\ud7ff\ue000-\ufffd\U00010000-\U0010ffff]")
_EXTENSION_KEY = re.compile(r"^[A-Za-z][A-Za-z0-9._-]*:\S")

_NORMALIZED_TARGETS = {
    IsoDate: (PivotProperty.CREATION_DATE, PivotProperty.RELATED_DATE),
    LanguageCode: (PivotProperty.LANGUAGE,),
    CorporateName: (PivotProperty.AUTHOR,),
}


@dataclass(frozen=True)
class Violation:
    index: int | None
    rule: str
    message: str

    def __str__(self) -> str:
        where = "record" if self.index is None else f"assertion {self.index}"
        return f"{where}: [{self.rule}] {self.message}"


def text_problem(value: str) -> str | None:
    """Why ``value`` cannot be a stored text value, or None if it can."""
    if not value:
        return EMPTY_VALUE
    if value != value.strip():
        return VALUE_WHITESPACE
    if _FORBIDDEN_CHARS.search(value):
        return VALUE_CHARACTERS
    return None


def is_absolute_url(text: str) -> bool:
    parts = urlsplit(text)
    return bool(parts.scheme and parts.netloc) and not any(c.isspace() for c in text)


def validate_pivot(record: PivotRecord) -> list[Violation]:
    out: list[Violation] = []
    titles: list[int] = []
    identifiers: list[int] = []
    links: set[str] = set()

    for i, a in enumerate(record.assertions):
        if a.property is PivotProperty.TITLE:
            titles.append(i)
        elif a.property is PivotProperty.IDENTIFIER:
            identifiers.append(i)
        elif a.property is PivotProperty.EXTERNAL_LINK:
            links.add(a.value)

        problem = text_problem(a.value)
        if problem == EMPTY_VALUE:
            out.append(Violation(i, EMPTY_VALUE, f"{a.property.value} value is empty"))
        elif problem == VALUE_WHITESPACE:
            out.append(Violation(i, VALUE_WHITESPACE, "value has surrounding whitespace"))
        elif problem == VALUE_CHARACTERS:
            out.append(Violation(i, VALUE_CHARACTERS, "value contains control or non-XML characters"))

        if a.qualifier is not None:
            families = QUALIFIED_PROPERTIES.get(a.property, ())
            if not isinstance(a.qualifier, families):
                out.append(
                    Violation(
                        i,
                        QUALIFIER_PLACEMENT,
                        f"qualifier {a.qualifier!r} not allowed on {a.property.value}",
                    )
                )
            elif isinstance(a.qualifier, (OtherDate, OtherPlace)):
                label = a.qualifier.label
                if text_problem(label):
                    out.append(Violation(i, OTHER_LABEL, f"bad free-form qualifier label {label!r}"))
                elif label.lower() in closed_qualifier_labels(a.property):
                    out.append(
                        Violation(i, OTHER_LABEL, f"free-form label {label!r} shadows a known kind")
                    )

        if a.normalized is not None:
            allowed = _NORMALIZED_TARGETS.get(type(a.normalized), ())
            if a.property not in allowed:
                out.append(
                    Violation(
                        i,
                        NORMALIZED_PLACEMENT,
                        f"{type(a.normalized).__name__} not allowed on {a.property.value}",
                    )
                )
            elif isinstance(a.normalized, IsoDate):
                if not a.normalized.is_valid():
                    out.append(Violation(i, NORMALIZED_CONSISTENCY, "normalized date is not a calendar date"))
                elif str(a.normalized.year) not in a.value:
                    out.append(
                        Violation(i, NORMALIZED_CONSISTENCY, "normalized year does not occur in raw value")
                    )
            elif isinstance(a.normalized, LanguageCode) and text_problem(a.normalized.code):
                out.append(Violation(i, NORMALIZED_CONSISTENCY, "empty or malformed language code"))

    if len(titles) != 1:
        at = titles[1] if len(titles) > 1 else None
        out.append(Violation(at, TITLE_CARDINALITY, f"expected exactly one Title, found {len(titles)}"))
    if len(identifiers) != 1:
        at = identifiers[1] if len(identifiers) > 1 else None
        out.append(
            Violation(at, IDENTIFIER_CARDINALITY, f"expected exactly one Identifier, found {len(identifiers)}")
        )
    elif record.record_id != record.assertions[identifiers[0]].value:
        out.append(
            Violation(None, RECORD_ID_MIRROR, "record id does not equal the Identifier value")
        )

    if record.digital_counterpart is not None:
        if not is_absolute_url(record.digital_counterpart):
            out.append(Violation(None, DIGITAL_COUNTERPART_URL, "digital counterpart is not an absolute URL"))
        elif record.digital_counterpart in links:
            out.append(
                Violation(
                    None,
                    DIGITAL_COUNTERPART_DISTINCT,
                    "digital counterpart duplicates an External link of the physical object",
                )
            )

    property_names = {p.value for p in PivotProperty}
    for key, value in record.extensions:
        if key in property_names or not _EXTENSION_KEY.match(key) or text_problem(key):
            out.append(Violation(None, EXTENSION_KEY, f"extension key {key!r} is not namespace-qualified"))
        if text_problem(value):
            out.append(Violation(None, EXTENSION_VALUE, f"extension {key!r} has an unusable value"))
    return out
