"""Optional machine-readable annotations for raw catalog values.

Raw values stay authoritative; normalization only attaches a
``normalized`` companion and never rejects a value it cannot read.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import replace

from .model import IsoDate, LanguageCode, PivotProperty, PivotRecord

_DAY_MONTH_YEAR = re.compile(r"^(\d{2})\.(\d{2})\.(\d{4})$")
_YEAR = re.compile(r"^(\d{4})$")

DATE_PROPERTIES = (PivotProperty.CREATION_DATE, PivotProperty.RELATED_DATE)

DEFAULT_LANGUAGES: Mapping[str, str] = {
    "german": "de",
    "polish": "pl",
    "french": "fr",
}


def parse_catalog_date(text: str) -> IsoDate | None:
    """Read ``DD.MM.YYYY`` or ``YYYY``; anything else gives None."""
    if m := _DAY_MONTH_YEAR.match(text):
        day, month, year = (int(g) for g in m.groups())
        date = IsoDate(year, month, day)
    elif m := _YEAR.match(text):
        date = IsoDate(int(m.group(1)))
    else:
        return None
    return date if date.is_valid() else None


def normalize_dates(record: PivotRecord) -> PivotRecord:
    assertions = []
    for a in record.assertions:
        if a.property in DATE_PROPERTIES and a.normalized is None:
            date = parse_catalog_date(a.value)
            if date is not None:
                a = a.with_normalized(date)
        assertions.append(a)
    return replace(record, assertions=tuple(assertions))


def normalize_languages(record: PivotRecord, lookup: Mapping[str, str] | None = None) -> PivotRecord:
    """Attach language codes for known language names; unknown names pass through."""
    table = {k.lower(): v for k, v in (lookup or DEFAULT_LANGUAGES).items()}
    assertions = []
    for a in record.assertions:
        if a.property is PivotProperty.LANGUAGE and a.normalized is None:
            code = table.get(a.value.lower())
            if code:
                a = a.with_normalized(LanguageCode(code))
        assertions.append(a)
    return replace(record, assertions=tuple(assertions))


def normalize(record: PivotRecord) -> PivotRecord:
    return normalize_languages(normalize_dates(record))
