"""JSON interchange for pivot records.

Document layout::

    {
      "id": "NDIGDZS033452",
      "digital_counterpart": "https://...",          # optional
      "assertions": [
        {"property": "RelatedPerson", "value": "Artist: Oskar Mink"},
        {"property": "PhysicalExtent", "value": "1 card; 57x88 cm"},
        {"property": "RelatedDate", "value": "24.01.1878", "qualifier": "Event",
         "normalized": {"date": "1878-01-24"}}
      ],
      "extensions": [{"key": "ju:watermark", "value": "crowned eagle"}]
    }

A ``value`` is a catalog cell: ``;`` separates several values of the same
property, and on related person/date/place a leading ``"Label: "`` names the
qualifier unless the object has an explicit ``"qualifier"`` key (``null``
means "unqualified, do not look for a prefix"). ``\\;`` and ``\\\\`` escape
a literal semicolon and backslash.
"""

from __future__ import annotations

import json
import re

from ..errors import EmptyValue, MalformedDocument, SchemaViolation
from .model import (
    QUALIFIED_PROPERTIES,
    CorporateName,
    IsoDate,
    LanguageCode,
    PivotProperty,
    PivotRecord,
    PropertyAssertion,
    qualifier_from_text,
    qualifier_text,
)
from .validation import EMPTY_VALUE, validate_pivot

_TOP_KEYS = {"id", "digital_counterpart", "assertions", "extensions"}
_ASSERTION_KEYS = {"property", "value", "qualifier", "normalized"}
_PREFIX = re.compile(r"^(?P<label>[^\W\d_][^:\n]{0,59}?):\s+(?P<rest>\S.*)$", re.DOTALL)


def split_cell(cell: str) -> list[str]:
    """Split a catalog cell on unescaped ``;`` and unescape the parts."""
    parts: list[str] = []
    current: list[str] = []
    chars = iter(cell)
    for ch in chars:
        if ch == "\\":
            current.append(next(chars, "\\"))
        elif ch == ";":
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


def escape_value(value: str) -> str:
    return value.replace("\\", "\\\\").replace(";", "\\;")


def _split_prefix(prop: PivotProperty, value: str):
    match = _PREFIX.match(value)
    if not match:
        return None, value
    qualifier = qualifier_from_text(prop, match.group("label"))
    if qualifier is None:
        # Unknown agent roles stay part of the recorded name.
        return None, value
    return qualifier, match.group("rest").strip()


def _normalized_from_json(obj, where: str):
    if obj is None:
        return None
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemaViolation(f"{where}: 'normalized' must be an object with one key")
    (kind, text), = obj.items()
    try:
        if kind == "date":
            return IsoDate.fromisoformat(text)
        if kind == "language" and isinstance(text, str):
            return LanguageCode(text)
        if kind == "name_form" and text == "corporate":
            return CorporateName()
    except (ValueError, TypeError, AttributeError) as exc:
        raise SchemaViolation(f"{where}: bad normalized value: {exc}") from None
    raise SchemaViolation(f"{where}: unknown normalized value {obj!r}")


def normalized_to_json(normalized) -> dict | None:
    if normalized is None:
        return None
    if isinstance(normalized, IsoDate):
        return {"date": normalized.isoformat()}
    if isinstance(normalized, LanguageCode):
        return {"language": normalized.code}
    return {"name_form": "corporate"}


def _require_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaViolation(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _assertions_from_json(index: int, obj) -> list[PropertyAssertion]:
    where = f"assertions[{index}]"
    if not isinstance(obj, dict):
        raise SchemaViolation(f"{where}: expected an object")
    unknown = set(obj) - _ASSERTION_KEYS
    if unknown:
        raise SchemaViolation(f"{where}: unknown keys {sorted(unknown)}")
    name = _require_str(obj.get("property"), f"{where}.property")
    try:
        prop = PivotProperty.from_name(name)
    except ValueError:
        raise SchemaViolation(f"{where}: unknown property {name!r}") from None
    cell = _require_str(obj.get("value"), f"{where}.value")
    normalized = _normalized_from_json(obj.get("normalized"), where)

    explicit = "qualifier" in obj
    qualifier = None
    if explicit and obj["qualifier"] is not None:
        text = _require_str(obj["qualifier"], f"{where}.qualifier")
        if prop not in QUALIFIED_PROPERTIES:
            raise SchemaViolation(f"{where}: qualifier not allowed on {prop.value}")
        qualifier = qualifier_from_text(prop, text)
        if qualifier is None:
            raise SchemaViolation(f"{where}: unknown qualifier {text!r} for {prop.value}")

    out = []
    for part in split_cell(cell):
        q = qualifier
        if not explicit and prop in QUALIFIED_PROPERTIES:
            q, part = _split_prefix(prop, part)
        out.append(PropertyAssertion(prop, part, q, normalized))
    return out


def read_pivot(document: str | bytes) -> PivotRecord:
    """Decode interchange JSON into a record without checking invariants.

    Structural problems (bad JSON, wrong types, unknown property names or
    qualifiers) still raise; use :func:`validate_pivot` on the result.
    """
    if isinstance(document, (bytes, bytearray)):
        try:
            document = bytes(document).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"pivot document is not UTF-8: {exc}") from None
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"pivot document is not JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaViolation("pivot document must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise SchemaViolation(f"unknown top-level keys {sorted(unknown)}")
    items = data.get("assertions")
    if not isinstance(items, list):
        raise SchemaViolation("'assertions' must be an array")

    assertions: list[PropertyAssertion] = []
    for i, obj in enumerate(items):
        assertions.extend(_assertions_from_json(i, obj))

    extensions = []
    for i, ext in enumerate(data.get("extensions") or []):
        if not isinstance(ext, dict) or set(ext) != {"key", "value"}:
            raise SchemaViolation(f"extensions[{i}]: expected an object with 'key' and 'value'")
        extensions.append(
            (_require_str(ext["key"], f"extensions[{i}].key"), _require_str(ext["value"], f"extensions[{i}].value"))
        )

    counterpart = data.get("digital_counterpart")
    if counterpart is not None:
        counterpart = _require_str(counterpart, "digital_counterpart")

    record = PivotRecord.build(assertions, counterpart, extensions)
    if "id" in data:
        record_id = _require_str(data["id"], "id")
        record = PivotRecord(record_id, record.assertions, counterpart, record.extensions)
    return record


def parse_pivot(document: str | bytes) -> PivotRecord:
    """Parse interchange JSON into a record satisfying every invariant.

    Raises MalformedDocument on syntax errors, EmptyValue when a cell or a
    ``;``-separated part is empty, and SchemaViolation for anything else.
    """
    record = read_pivot(document)
    violations = validate_pivot(record)
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        cls = EmptyValue if any(v.rule == EMPTY_VALUE for v in violations) else SchemaViolation
        raise cls(f"invalid pivot record: {summary}", violations)
    return record


def assertion_to_json(a: PropertyAssertion) -> dict:
    obj = {"property": a.property.value, "value": escape_value(a.value)}
    if a.property in QUALIFIED_PROPERTIES:
        obj["qualifier"] = None if a.qualifier is None else qualifier_text(a.qualifier)
    if a.normalized is not None:
        obj["normalized"] = normalized_to_json(a.normalized)
    return obj


def assertion_from_json(obj) -> PropertyAssertion:
    """Inverse of :func:`assertion_to_json` for exactly one assertion."""
    parts = _assertions_from_json(0, obj)
    if len(parts) != 1:
        raise SchemaViolation("expected a single-valued assertion")
    return parts[0]


def record_to_json(record: PivotRecord) -> dict:
    data: dict = {"id": record.record_id}
    if record.digital_counterpart is not None:
        data["digital_counterpart"] = record.digital_counterpart
    data["assertions"] = [assertion_to_json(a) for a in record.assertions]
    data["extensions"] = [{"key": k, "value": v} for k, v in record.extensions]
    return data


def serialize_pivot(record: PivotRecord) -> str:
    """Render ``record`` as interchange JSON (UTF-8 text, newline-terminated).

    One object per assertion; qualifiers go to the ``"qualifier"`` key, so
    values are written without their prefixes.
    """
    return json.dumps(record_to_json(record), ensure_ascii=False, indent=2) + "\n"
