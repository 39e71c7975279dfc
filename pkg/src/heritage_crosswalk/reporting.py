"""Loss report rendering and batch statistics."""

from __future__ import annotations

import json
import textwrap
from collections import Counter
from dataclasses import dataclass, field

from .crosswalk.engine import LossEntry, LossReport
from .pivot.model import qualifier_text
from .standards import Standard

WIDTH = 80

_SECTIONS = (
    ("dropped", "Dropped"),
    ("approximated", "Approximated"),
    ("alternative_resolved", "Alternative resolved"),
    ("converted", "Converted"),
)


def render_loss(report: LossReport, fmt: str = "json") -> str:
    """Render a report as ``"json"`` or ``"text"`` (both newline-terminated)."""
    if fmt == "json":
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n"
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown loss report format: {fmt!r}")


def _wrap(text: str, indent: str) -> list[str]:
    return textwrap.wrap(text, WIDTH, initial_indent=indent, subsequent_indent=indent) or [indent.rstrip()]


def _entry_lines(entry: LossEntry) -> list[str]:
    a = entry.assertion
    label = a.property.value
    if a.qualifier is not None:
        label += f" ({qualifier_text(a.qualifier)})"
    target = " + ".join(p.render() for p in entry.paths) or "--"
    lines = _wrap(f"#{entry.index} {label} -> {target} [{entry.kind}]", "  ")
    lines += _wrap(f"value: {a.value}", "      ")
    if entry.note:
        lines += _wrap(f"note: {entry.note}", "      ")
    if entry.options:
        lines += _wrap("options: " + ", ".join(p.render() for p in entry.options), "      ")
    return lines


def _render_text(report: LossReport) -> str:
    lines = _wrap(f"Loss report for {report.record_id} -> {report.standard.display_name}", "")
    lines.append(f"lossy: {'yes' if report.lossy else 'no'} ({len(report.dropped)} dropped of {report.total})")
    for attr, title in _SECTIONS:
        entries = getattr(report, attr)
        lines += ["", f"{title} ({len(entries)})"]
        if not entries:
            lines.append("  (none)")
        for entry in entries:
            lines += _entry_lines(entry)
    lines += ["", f"Extras dropped ({len(report.extras_dropped)})"]
    if not report.extras_dropped:
        lines.append("  (none)")
    for key, value in report.extras_dropped:
        lines += _wrap(f"{key}: {value}", "  ")
    return "\n".join(lines) + "\n"


@dataclass
class Counters:
    records: int = 0
    assertions_converted: int = 0
    dropped: int = 0
    approximated: int = 0
    alternative_resolved: int = 0

    def add(self, report: LossReport) -> None:
        self.records += 1
        self.assertions_converted += len(report.converted)
        self.dropped += len(report.dropped)
        self.approximated += len(report.approximated)
        self.alternative_resolved += len(report.alternative_resolved)

    def to_dict(self) -> dict:
        return {
            "records": self.records,
            "assertionsConverted": self.assertions_converted,
            "dropped": self.dropped,
            "approximated": self.approximated,
            "alternativeResolved": self.alternative_resolved,
        }


@dataclass
class BatchSummary:
    per_standard: dict[Standard, Counters] = field(default_factory=dict)
    worst_records: list[tuple[str, int]] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "perStandard": {s.value: c.to_dict() for s, c in self.per_standard.items()},
            "worstRecords": [{"recordId": r, "dropped": n} for r, n in self.worst_records],
            "failures": [{"input": p, "error": e} for p, e in self.failures],
        }

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"
        lines = ["Batch summary"]
        header = f"  {'standard':<20}{'records':>8}{'converted':>11}{'dropped':>9}{'approx':>8}{'altern':>8}"
        lines.append(header)
        for standard, c in self.per_standard.items():
            lines.append(
                f"  {standard.display_name:<20}{c.records:>8}{c.assertions_converted:>11}"
                f"{c.dropped:>9}{c.approximated:>8}{c.alternative_resolved:>8}"
            )
        lines.append("Most dropped")
        for record_id, n in self.worst_records[:10]:
            lines += _wrap(f"{n:>4}  {record_id}", "  ")
        if self.failures:
            lines.append("Failures")
            for path, error in self.failures:
                lines += _wrap(f"{path}: {error}", "  ")
        return "\n".join(lines) + "\n"


def summarize(reports) -> BatchSummary:
    """Element-wise totals per standard and records ranked by dropped count."""
    per_standard: dict[Standard, Counters] = {}
    dropped: Counter[str] = Counter()
    for report in reports:
        per_standard.setdefault(report.standard, Counters()).add(report)
        dropped[report.record_id] += len(report.dropped)
    ordered = {s: per_standard.get(s, Counters()) for s in Standard}
    worst = sorted(dropped.items(), key=lambda item: (-item[1], item[0]))
    return BatchSummary(ordered, worst)
