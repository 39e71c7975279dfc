"""The crosswalk table as a property-by-standard grid of rendered cells."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from ..pivot.model import PivotProperty
from ..standards import Standard
from .table import Alternative, Composite, CrosswalkTable, MappingRule, Unmappable, kind_paths

UNMAPPABLE_CELL = "--"


def render_cell(rule: MappingRule) -> str:
    if isinstance(rule.kind, Unmappable):
        return UNMAPPABLE_CELL
    joiner = " + " if isinstance(rule.kind, Composite) else " or "
    if not isinstance(rule.kind, (Alternative, Composite)):
        joiner = ""
    return joiner.join(p.render() for p in kind_paths(rule.kind))


@dataclass(frozen=True)
class Matrix:
    """21 rows (pivot properties) by 5 columns (standards)."""

    rows: tuple[tuple[PivotProperty, tuple[str, ...]], ...]
    kinds: tuple[tuple[str, ...], ...]

    def cell(self, prop: PivotProperty, standard: Standard) -> str:
        return dict(self.rows)[prop][list(Standard).index(standard)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["property"] + [s.column for s in Standard])
        for prop, cells in self.rows:
            writer.writerow([prop.value, *cells])
        return buf.getvalue()

    def to_markdown(self) -> str:
        header = ["Property"] + [s.display_name for s in Standard]
        lines = [_md_row(header), _md_row(["---"] * len(header))]
        for prop, cells in self.rows:
            lines.append(_md_row([prop.label, *cells]))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "columns": [s.column for s in Standard],
            "rows": [
                {"property": prop.value, "cells": dict(zip((s.column for s in Standard), cells)),
                 "kinds": dict(zip((s.column for s in Standard), kinds))}
                for (prop, cells), kinds in zip(self.rows, self.kinds)
            ],
        }


def _md_row(cells) -> str:
    return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |"


def coverage_matrix(table: CrosswalkTable) -> Matrix:
    rows, kinds = [], []
    for prop in PivotProperty:
        rules = [table.rule(prop, s) for s in Standard]
        rows.append((prop, tuple(render_cell(r) for r in rules)))
        kinds.append(tuple(type(r.kind).__name__ for r in rules))
    return Matrix(tuple(rows), tuple(kinds))
