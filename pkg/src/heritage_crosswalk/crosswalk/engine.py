"""Projection between pivot records and target models, with loss accounting."""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import unquote, urlsplit

from ..codecs.model import DEFAULT_BASE_URI, Node, TargetModel, canonical_order, mint_uri
from ..codecs.vocabulary import EDM_IS_SHOWN_BY
from ..errors import SchemaViolation
from ..pivot.interchange import assertion_from_json, assertion_to_json
from ..pivot.model import (
    QUALIFIED_PROPERTIES,
    CorporateName,
    IsoDate,
    PivotProperty as P,
    PivotRecord,
    PropertyAssertion,
    qualifier_from_text,
    qualifier_text,
)
from ..pivot.validation import text_problem, validate_pivot
from ..standards import ElementPath, Standard
from .table import (
    Alternative,
    Approximate,
    Composite,
    CrosswalkTable,
    Exact,
    FixedPriority,
    Unmappable,
    builtin_table,
    kind_name,
    kind_paths,
)

# EAD attributes carrying pivot detail that has no element of its own.
ROLE_ATTRIBUTE = "role"
NORMAL_ATTRIBUTE = "normal"
DIGITAL_COUNTERPART = "digital_counterpart"

_SINGLETONS = (P.TITLE, P.IDENTIFIER)


@dataclass(frozen=True)
class LossEntry:
    """What happened to one input assertion."""

    index: int
    assertion: PropertyAssertion
    kind: str
    paths: tuple[ElementPath, ...] = ()
    note: str | None = None
    options: tuple[ElementPath, ...] = ()


@dataclass(frozen=True)
class LossReport:
    """Per-conversion account of every input assertion.

    Each assertion lands in exactly one of ``converted``, ``dropped``,
    ``approximated`` or ``alternative_resolved``. ``extras_dropped`` lists
    record-level data (digital counterpart, extensions) the target could
    not carry.
    """

    record_id: str
    standard: Standard
    converted: tuple[LossEntry, ...] = ()
    dropped: tuple[LossEntry, ...] = ()
    approximated: tuple[LossEntry, ...] = ()
    alternative_resolved: tuple[LossEntry, ...] = ()
    extras_dropped: tuple[tuple[str, str], ...] = ()

    @property
    def lossy(self) -> bool:
        return bool(self.dropped)

    @property
    def total(self) -> int:
        return len(self.converted) + len(self.dropped) + len(self.approximated) + len(self.alternative_resolved)

    def to_dict(self) -> dict:
        return {
            "recordId": self.record_id,
            "standard": self.standard.value,
            "lossy": self.lossy,
            "counts": {
                "total": self.total,
                "converted": len(self.converted),
                "dropped": len(self.dropped),
                "approximated": len(self.approximated),
                "alternativeResolved": len(self.alternative_resolved),
            },
            "converted": [_entry_to_dict(e) for e in self.converted],
            "dropped": [_entry_to_dict(e, reason=True) for e in self.dropped],
            "approximated": [_entry_to_dict(e) for e in self.approximated],
            "alternativeResolved": [_entry_to_dict(e) for e in self.alternative_resolved],
            "extrasDropped": [{"key": k, "value": v} for k, v in self.extras_dropped],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LossReport":
        standard = Standard(data["standard"])
        entries = lambda key: tuple(_entry_from_dict(standard, e) for e in data.get(key, ()))  # noqa: E731
        return cls(
            record_id=data["recordId"],
            standard=standard,
            converted=entries("converted"),
            dropped=entries("dropped"),
            approximated=entries("approximated"),
            alternative_resolved=entries("alternativeResolved"),
            extras_dropped=tuple((e["key"], e["value"]) for e in data.get("extrasDropped", ())),
        )


def path_to_dict(path: ElementPath) -> dict:
    return {
        "path": list(path.path),
        "attributes": [[k, v] for k, v in path.attributes],
        "context": path.context,
        "rendered": path.render(),
    }


def path_from_dict(standard: Standard, data: dict) -> ElementPath:
    return ElementPath(
        standard,
        tuple(data["path"]),
        tuple((k, v) for k, v in data.get("attributes", ())),
        data.get("context"),
    )


def _entry_to_dict(entry: LossEntry, reason: bool = False) -> dict:
    out = {
        "index": entry.index,
        "assertion": assertion_to_json(entry.assertion),
        "kind": entry.kind,
        "paths": [path_to_dict(p) for p in entry.paths],
        "note": entry.note,
        "options": [path_to_dict(p) for p in entry.options],
    }
    if reason:
        out["reason"] = entry.kind
    return out


def _entry_from_dict(standard: Standard, data: dict) -> LossEntry:
    return LossEntry(
        index=data["index"],
        assertion=assertion_from_json(data["assertion"]),
        kind=data["kind"],
        paths=tuple(path_from_dict(standard, p) for p in data.get("paths", ())),
        note=data.get("note"),
        options=tuple(path_from_dict(standard, p) for p in data.get("options", ())),
    )


def _annotations(standard: Standard, a: PropertyAssertion) -> tuple[tuple[str, str], ...]:
    if standard is not Standard.EAD:
        return ()
    out = []
    if a.qualifier is not None:
        out.append((ROLE_ATTRIBUTE, qualifier_text(a.qualifier)))
    if isinstance(a.normalized, IsoDate):
        out.append((NORMAL_ATTRIBUTE, a.normalized.isoformat()))
    return tuple(out)


def map_forward(
    record: PivotRecord,
    standard: Standard,
    table: CrosswalkTable | None = None,
    base_uri: str = DEFAULT_BASE_URI,
) -> tuple[TargetModel, LossReport]:
    """Project a valid record onto ``standard``.

    Raises SchemaViolation for invalid records, UnknownQualifier when a
    role resolver meets a free-form qualifier and InvalidBase for a bad
    ``base_uri``.
    """
    violations = validate_pivot(record)
    if violations:
        raise SchemaViolation(f"invalid pivot record: {violations[0]}", violations)
    table = table or builtin_table()
    record_uri = mint_uri(record.record_id, base_uri)

    nodes: list[Node] = []
    parallel_seen: set[tuple[ElementPath, str]] = set()
    sections: dict[str, list[LossEntry]] = {
        "converted": [], "dropped": [], "approximated": [], "alternative_resolved": [],
    }

    for i, a in enumerate(record.assertions):
        kind = table.rule(a.property, standard).kind
        name = kind_name(kind)
        notes = _annotations(standard, a)
        if isinstance(kind, Unmappable):
            sections["dropped"].append(LossEntry(i, a, name))
        elif isinstance(kind, Exact):
            nodes.append(Node(kind.path, a.value, notes))
            sections["converted"].append(LossEntry(i, a, name, (kind.path,)))
        elif isinstance(kind, Approximate):
            nodes.append(Node(kind.path, a.value, notes))
            sections["approximated"].append(LossEntry(i, a, name, (kind.path,), kind.note))
        elif isinstance(kind, Composite):
            nodes.extend(Node(p, a.value, notes) for p in kind.parts)
            sections["converted"].append(LossEntry(i, a, name, kind.parts))
        else:
            resolution = kind.resolver.resolve(a)
            nodes.append(Node(resolution.path, a.value, notes))
            paths = [resolution.path]
            if isinstance(kind.resolver, FixedPriority):
                for extra in kind.resolver.parallel:
                    value = extra.term_for(a.value)
                    if value is not None:
                        paths.append(extra.path)
                        if (extra.path, value) not in parallel_seen:
                            parallel_seen.add((extra.path, value))
                            nodes.append(Node(extra.path, value))
            entry = LossEntry(i, a, name, tuple(paths), resolution.note, kind.options)
            sections["approximated" if resolution.note else "alternative_resolved"].append(entry)

    extras = []
    if record.digital_counterpart is not None:
        if standard is Standard.EDM:
            nodes.append(Node(EDM_IS_SHOWN_BY, record.digital_counterpart))
        else:
            extras.append((DIGITAL_COUNTERPART, record.digital_counterpart))
    extras.extend(record.extensions)

    model = TargetModel(standard, record_uri, canonical_order(standard, nodes))
    report = LossReport(
        record.record_id,
        standard,
        **{k: tuple(v) for k, v in sections.items()},
        extras_dropped=tuple(extras),
    )
    return model, report


@dataclass(frozen=True)
class Ambiguity:
    """A node that could be read more than one way, or not at all."""

    node_index: int | None
    path: ElementPath | None
    value: str | None
    chosen: P | None
    alternatives: tuple[P, ...] = ()
    note: str = ""

    def __str__(self) -> str:
        where = self.path.render() if self.path else "record"
        chosen = self.chosen.value if self.chosen else "extension"
        alts = ", ".join(p.value for p in self.alternatives)
        tail = f"; also {alts}" if alts else ""
        return f"{where} read as {chosen}{tail}" + (f" ({self.note})" if self.note else "")


@dataclass(frozen=True)
class _Reading:
    property: P
    path: ElementPath
    hint: object
    forward_only: bool


def _qualifier_hints(kind: Alternative) -> dict[ElementPath, object]:
    """Options reached by exactly one qualifier imply that qualifier."""
    reached: dict[ElementPath, set] = {}
    for path, qualifier in kind.resolver.reachable():
        reached.setdefault(path, set()).add(qualifier)
    return {p: next(iter(q)) for p, q in reached.items() if len(q) == 1 and None not in q}


def _reverse_index(table: CrosswalkTable, standard: Standard) -> dict[tuple, list[_Reading]]:
    """Readings keyed by (path, attributes); context is weighed later."""
    index: dict[tuple, list[_Reading]] = {}
    for rule in table.for_standard(standard):
        hints = _qualifier_hints(rule.kind) if isinstance(rule.kind, Alternative) else {}
        for path in kind_paths(rule.kind):
            reading = _Reading(rule.property, path, hints.get(path), rule.forward_only)
            index.setdefault((path.path, path.attributes), []).append(reading)
    return index


def _extension_key(standard: Standard, path: ElementPath) -> str:
    names = path.path[1:] if path.path[0] == "x-unknown" else path.path
    return f"x-{standard.value}:" + "/".join(names)


def _choose(readings: list[_Reading], context) -> _Reading | None:
    usable = [r for r in readings if not r.forward_only]
    same = [r for r in usable if r.path.context == context]
    pool = same or usable
    return min(pool, key=lambda r: r.property.rank) if pool else None


def map_backward(
    model: TargetModel,
    standard: Standard | None = None,
    table: CrosswalkTable | None = None,
) -> tuple[PivotRecord, list[Ambiguity]]:
    """Read a target model back into a pivot record.

    Never fails: unreadable nodes become extensions and every doubtful
    reading is listed as an Ambiguity. The result is not validated.
    """
    standard = standard or model.standard
    table = table or builtin_table()
    index = _reverse_index(table, standard)
    assertions: list[PropertyAssertion] = []
    extensions: list[tuple[str, str]] = []
    ambiguities: list[Ambiguity] = []
    counterpart = None
    has_dc_type = any(n.path.path == ("dc:type",) for n in model.nodes)
    edm_type = table.rule(P.TYPE_OF_DOCUMENT, Standard.EDM).kind
    parallel_paths = {
        extra.path
        for extra in (edm_type.resolver.parallel if isinstance(edm_type, Alternative)
                      and isinstance(edm_type.resolver, FixedPriority) else ())
    }

    for i, node in enumerate(model.nodes):
        if text_problem(node.value):
            ambiguities.append(Ambiguity(i, node.path, node.value, None, note="unusable value skipped"))
            continue
        if standard is Standard.EDM and node.path == EDM_IS_SHOWN_BY:
            if counterpart is None:
                counterpart = node.value
                continue
            extensions.append((_extension_key(standard, node.path), node.value))
            ambiguities.append(Ambiguity(i, node.path, node.value, None, note="second digital counterpart"))
            continue
        if standard is Standard.EDM and has_dc_type and node.path in parallel_paths:
            continue  # derived from dc:type on the way out

        readings = [] if node.unknown else index.get((node.path.path, node.path.attributes), [])
        chosen = _choose(readings, node.path.context)
        others = tuple(dict.fromkeys(r.property for r in readings if chosen is None or r.property is not chosen.property))
        if chosen is None:
            extensions.append((_extension_key(standard, node.path), node.value))
            if readings:
                ambiguities.append(Ambiguity(i, node.path, node.value, None, others, "read-back not supported"))
            continue

        prop = chosen.property
        if prop in _SINGLETONS and any(a.property is prop for a in assertions):
            extensions.append((_extension_key(standard, node.path), node.value))
            ambiguities.append(Ambiguity(i, node.path, node.value, None, (prop,), f"repeated {prop.value}"))
            continue

        assertion, problems = _read_assertion(prop, node, chosen.hint)
        assertions.append(assertion)
        note = "; ".join(problems)
        if others or note:
            ambiguities.append(Ambiguity(i, node.path, node.value, prop, others, note))

    if not any(a.property is P.IDENTIFIER for a in assertions):
        fallback = unquote(urlsplit(model.record_uri).path.rstrip("/").rsplit("/", 1)[-1])
        if fallback and not text_problem(fallback):
            assertions.append(PropertyAssertion(P.IDENTIFIER, fallback))
            ambiguities.append(
                Ambiguity(None, None, fallback, P.IDENTIFIER, note="identifier taken from the record URI")
            )

    record = PivotRecord.build(assertions, counterpart, extensions)
    return record, ambiguities


def _read_assertion(prop: P, node: Node, hint) -> tuple[PropertyAssertion, list[str]]:
    qualifier = hint
    normalized = None
    problems = []
    if node.path.path == ("corpname",) and prop is P.AUTHOR:
        normalized = CorporateName()
    for name, value in node.annotations:
        if name == ROLE_ATTRIBUTE and prop in QUALIFIED_PROPERTIES:
            found = qualifier_from_text(prop, value)
            if found is None:
                problems.append(f"unknown role {value!r} ignored")
            else:
                qualifier = found
        elif name == NORMAL_ATTRIBUTE and prop in (P.CREATION_DATE, P.RELATED_DATE):
            try:
                date = IsoDate.fromisoformat(value)
            except ValueError:
                problems.append(f"unreadable normal date {value!r} ignored")
                continue
            if str(date.year) in node.value:
                normalized = date
            else:
                problems.append(f"normal date {value!r} disagrees with the text")
        else:
            problems.append(f"attribute {name}={value!r} ignored")
    return PropertyAssertion(prop, node.value, qualifier, normalized), problems


def exact_properties(standard: Standard, table: CrosswalkTable | None = None) -> frozenset[P]:
    table = table or builtin_table()
    return frozenset(r.property for r in table.for_standard(standard) if isinstance(r.kind, Exact))


def exact_projection(record: PivotRecord, props) -> dict[P, list[tuple]]:
    """(value, qualifier) pairs per property, for the properties given."""
    out: dict[P, list[tuple]] = {}
    for a in record.assertions:
        if a.property in props:
            out.setdefault(a.property, []).append((a.value, a.qualifier))
    return out


@dataclass(frozen=True)
class FieldDiff:
    property: P
    expected: tuple
    actual: tuple

    def __str__(self) -> str:
        show = lambda pairs: [v if q is None else f"{qualifier_text(q)}: {v}" for v, q in pairs]  # noqa: E731
        return f"{self.property.value}: expected {show(self.expected)}, got {show(self.actual)}"


def exact_diff(original: PivotRecord, recovered: PivotRecord, standard: Standard, table=None) -> list[FieldDiff]:
    """Field-level differences on the properties whose rule is Exact."""
    props = exact_properties(standard, table)
    want = exact_projection(original, props)
    got = exact_projection(recovered, props)
    return [
        FieldDiff(p, tuple(want.get(p, ())), tuple(got.get(p, ())))
        for p in P
        if p in props and want.get(p, []) != got.get(p, [])
    ]


__all__ = [
    "Ambiguity",
    "FieldDiff",
    "LossEntry",
    "LossReport",
    "exact_diff",
    "exact_projection",
    "exact_properties",
    "map_backward",
    "map_forward",
]
