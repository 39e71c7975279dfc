from pathlib import Path

import pytest

from heritage_crosswalk import Standard
from heritage_crosswalk.crosswalk import builtin_table, coverage_matrix
from heritage_crosswalk.crosswalk.matrix import render_cell
from heritage_crosswalk.crosswalk.table import (
    Alternative,
    Approximate,
    Composite,
    CrosswalkTable,
    Exact,
    MappingRule,
    Unmappable,
    kind_paths,
)
from heritage_crosswalk.pivot import PivotProperty as P

GOLDEN = Path(__file__).parent / "golden" / "table2.csv"
TABLE = builtin_table()


def test_table_is_total():
    assert len(TABLE.rules) == 105
    assert {(r.property, r.standard) for r in TABLE.rules} == {(p, s) for p in P for s in Standard}


def test_title_in_dublin_core_is_exact():
    rule = TABLE.rule(P.TITLE, Standard.DUBLIN_CORE)
    assert isinstance(rule.kind, Exact)
    assert rule.kind.path.path == ("dc:title",)


def test_typography_note_is_unmappable_everywhere():
    assert all(isinstance(TABLE.rule(P.TYPOGRAPHY_NOTE, s).kind, Unmappable) for s in Standard)


def test_material_information_only_in_ead():
    mapped = [s for s in Standard if not isinstance(TABLE.rule(P.MATERIAL_INFORMATION, s).kind, Unmappable)]
    assert mapped == [Standard.EAD]


def test_place_of_origin_in_edm_is_approximate():
    kind = TABLE.rule(P.PLACE_OF_ORIGIN, Standard.EDM).kind
    assert isinstance(kind, Approximate)
    assert kind.path.path == ("edm:hasMet",)
    assert "place" in kind.note


@pytest.mark.parametrize("standard", list(Standard))
def test_exact_paths_are_unique_per_standard(standard):
    signatures = [
        (r.kind.path.path, r.kind.path.attributes, r.kind.path.context)
        for r in TABLE.for_standard(standard)
        if isinstance(r.kind, Exact)
    ]
    assert len(signatures) == len(set(signatures))


def test_every_path_belongs_to_its_column():
    for rule in TABLE.rules:
        assert all(p.standard is rule.standard for p in kind_paths(rule.kind))


def test_kinds_are_well_formed():
    for rule in TABLE.rules:
        if isinstance(rule.kind, Approximate):
            assert rule.kind.note.strip()
        if isinstance(rule.kind, (Alternative, Composite)):
            assert len(kind_paths(rule.kind)) >= 2


def test_duplicate_and_missing_cells_rejected():
    with pytest.raises(ValueError):
        CrosswalkTable(TABLE.rules + (TABLE.rules[0],))
    with pytest.raises(ValueError):
        CrosswalkTable(TABLE.rules[1:])


def test_table_is_immutable():
    with pytest.raises(AttributeError):
        TABLE.rules = ()


# -- matrix ------------------------------------------------------------------


def test_matrix_matches_golden_csv():
    assert coverage_matrix(TABLE).to_csv() == GOLDEN.read_text(encoding="utf-8")


def test_keywords_ead_cell():
    assert coverage_matrix(TABLE).cell(P.KEYWORDS, Standard.EAD) == "<controlaccess><subject></controlaccess>"


def test_typography_row_has_five_unmappable_cells():
    matrix = coverage_matrix(TABLE)
    assert [matrix.cell(P.TYPOGRAPHY_NOTE, s) for s in Standard] == ["--"] * 5
    kinds = dict(zip((p for p, _ in matrix.rows), matrix.kinds))[P.TYPOGRAPHY_NOTE]
    assert kinds == ("Unmappable",) * 5


def test_flipping_one_rule_changes_one_cell():
    flipped = TABLE.with_rule(MappingRule(P.KEYWORDS, Standard.EAD, Unmappable()))
    before = GOLDEN.read_text(encoding="utf-8").splitlines()
    after = coverage_matrix(flipped).to_csv().splitlines()
    changed = [
        (row, col)
        for row, (a, b) in enumerate(zip(before, after))
        for col, (x, y) in enumerate(zip(a.split(","), b.split(",")))
        if x != y
    ]
    assert changed == [(list(P).index(P.KEYWORDS) + 1, 2)]


def test_markdown_header_lists_standards_in_order():
    header = coverage_matrix(TABLE).to_markdown().splitlines()[0]
    assert header == "| Property | Dublin Core | EAD | MODS | EDM | Digital Scriptorium |"


def test_markdown_has_a_row_per_property():
    lines = coverage_matrix(TABLE).to_markdown().splitlines()
    assert len(lines) == 2 + 21
    assert lines[2].startswith("| Title |")


def test_render_cell_joins_alternatives():
    assert render_cell(TABLE.rule(P.KEYWORDS, Standard.MODS)) == "<subject> or <classification>"


def test_matrix_dict_shape():
    data = coverage_matrix(TABLE).to_dict()
    assert data["columns"] == [s.column for s in Standard]
    assert len(data["rows"]) == 21
    assert data["rows"][0]["kinds"]["dublin_core"] == "Exact"
