"""Pivot schema: 21 descriptive properties plus digital counterpart and extensions."""

from .fixtures import FIXTURE_NAMES, load_fixture, load_fixtures
from .interchange import parse_pivot, read_pivot, serialize_pivot
from .model import (
    AgentRole,
    CorporateName,
    DateKind,
    IsoDate,
    LanguageCode,
    OtherDate,
    OtherPlace,
    PivotProperty,
    PivotRecord,
    PlaceKind,
    PropertyAssertion,
    Qualifier,
    qualifier_text,
)
from .normalize import normalize, normalize_dates, normalize_languages
from .validation import Violation, validate_pivot

__all__ = [
    "FIXTURE_NAMES",
    "AgentRole",
    "CorporateName",
    "DateKind",
    "IsoDate",
    "LanguageCode",
    "OtherDate",
    "OtherPlace",
    "PivotProperty",
    "PivotRecord",
    "PlaceKind",
    "PropertyAssertion",
    "Qualifier",
    "Violation",
    "load_fixture",
    "load_fixtures",
    "normalize",
    "normalize_dates",
    "normalize_languages",
    "parse_pivot",
    "qualifier_text",
    "read_pivot",
    "serialize_pivot",
    "validate_pivot",
]
