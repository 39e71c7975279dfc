import json
from dataclasses import replace

import pytest
from hypothesis import given, settings

from heritage_crosswalk.errors import EmptyValue, MalformedDocument, SchemaViolation
from heritage_crosswalk.pivot import (
    FIXTURE_NAMES,
    AgentRole,
    DateKind,
    IsoDate,
    LanguageCode,
    OtherPlace,
    PivotProperty as P,
    PivotRecord,
    PropertyAssertion,
    load_fixture,
    normalize,
    normalize_dates,
    parse_pivot,
    serialize_pivot,
    validate_pivot,
)
from heritage_crosswalk.pivot import validation as rules
from strategies import pivot_records


def doc(*assertions, **top):
    body = {"id": top.pop("id", "Y"), "assertions": list(assertions), **top}
    return json.dumps(body)


MINIMAL = doc({"property": "Title", "value": "X"}, {"property": "Identifier", "value": "Y"})


def test_fixture_sizes_and_ids():
    sizes = {name: len(load_fixture(name).assertions) for name in FIXTURE_NAMES}
    assert sizes == {"manuscript": 15, "placard": 21, "obituary": 31}
    assert load_fixture("manuscript").record_id == "SA, Aster, Karl Heinrich_2.2"


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_validate_cleanly(name):
    assert validate_pivot(load_fixture(name)) == []


def test_manuscript_correspondents_are_qualified():
    roles = {a.value: a.qualifier for a in load_fixture("manuscript").assertions if a.property is P.RELATED_PERSON}
    assert roles["Aster, Karl Heinrich"] is AgentRole.SENDER
    assert roles["Preuss, Johann David Erdmann"] is AgentRole.RECEIVER


def test_minimal_record():
    record = parse_pivot(MINIMAL)
    assert [a.property for a in record.assertions] == [P.TITLE, P.IDENTIFIER]
    assert all(a.qualifier is None for a in record.assertions)


def test_prefix_becomes_qualifier():
    record = parse_pivot(
        doc(
            {"property": "Title", "value": "X"},
            {"property": "Identifier", "value": "Y"},
            {"property": "RelatedPerson", "value": "Deceased: Chodźko, Alexander (1804-1891)"},
        )
    )
    person = record.assertions[2]
    assert person.qualifier is AgentRole.DECEASED
    assert person.value == "Chodźko, Alexander (1804-1891)"


def test_unknown_role_prefix_stays_in_value():
    record = parse_pivot(
        doc(
            {"property": "Title", "value": "X"},
            {"property": "Identifier", "value": "Y"},
            {"property": "RelatedPerson", "value": "Note: Someone"},
        )
    )
    assert record.assertions[2].qualifier is None
    assert record.assertions[2].value == "Note: Someone"


def test_obituary_dates_keep_their_prefixes():
    text = serialize_pivot(load_fixture("obituary"))
    dates = [a for a in load_fixture("obituary").assertions if a.property is P.RELATED_DATE]
    assert {type(a.qualifier) for a in dates} == {DateKind}
    assert {a.qualifier for a in dates} == {DateKind.DATE_OF_DEATH, DateKind.DATE_OF_FUNERAL}
    for a in dates:
        assert a.qualifier.value in text


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name):
    record = load_fixture(name)
    assert parse_pivot(serialize_pivot(record)) == record


def test_extension_round_trip():
    record = replace(parse_pivot(MINIMAL), extensions=(("ju:watermark", "crowned eagle"),))
    assert parse_pivot(serialize_pivot(record)).extensions == (("ju:watermark", "crowned eagle"),)


def test_semicolon_escapes_round_trip():
    record = PivotRecord.build(
        [PropertyAssertion(P.TITLE, r"a; b \ c"), PropertyAssertion(P.IDENTIFIER, "Y")]
    )
    assert parse_pivot(serialize_pivot(record)) == record


@given(pivot_records(max_assertions=6))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(record):
    assert parse_pivot(serialize_pivot(record)) == record


def test_malformed_json():
    with pytest.raises(MalformedDocument):
        parse_pivot("{not json")


@pytest.mark.parametrize(
    "document",
    [
        doc({"property": "Title", "value": "X"}, {"property": "Identifier", "value": "Y"}, {"property": "Colour", "value": "red"}),
        doc({"property": "Title", "value": "X"}, {"property": "Title", "value": "Z"}, {"property": "Identifier", "value": "Y"}),
        doc({"property": "Title", "value": "X"}, {"property": "Identifier", "value": "Y"}, {"property": "Keywords", "value": "k", "qualifier": "Sender"}),
    ],
    ids=["unknown-property", "duplicate-title", "illegal-qualifier"],
)
def test_schema_violations(document):
    with pytest.raises(SchemaViolation):
        parse_pivot(document)


def test_empty_value():
    with pytest.raises(EmptyValue):
        parse_pivot(doc({"property": "Title", "value": "  "}, {"property": "Identifier", "value": "Y"}))


def _rules(record):
    return [v.rule for v in validate_pivot(record)]


def test_two_titles_violate_uniqueness():
    record = load_fixture("placard")
    record = replace(record, assertions=record.assertions + (PropertyAssertion(P.TITLE, "again"),))
    assert _rules(record) == [rules.TITLE_CARDINALITY]


def test_sender_on_keywords_violates_placement():
    record = load_fixture("placard")
    record = replace(
        record, assertions=record.assertions + (PropertyAssertion(P.KEYWORDS, "k", AgentRole.SENDER),)
    )
    assert _rules(record) == [rules.QUALIFIER_PLACEMENT]


def _append(record, *assertions):
    return replace(record, assertions=record.assertions + assertions)


MUTATIONS = {
    rules.IDENTIFIER_CARDINALITY: lambda r: _append(r, PropertyAssertion(P.IDENTIFIER, "other")),
    rules.RECORD_ID_MIRROR: lambda r: replace(r, record_id="elsewhere"),
    rules.EMPTY_VALUE: lambda r: _append(r, PropertyAssertion(P.KEYWORDS, "")),
    rules.VALUE_WHITESPACE: lambda r: _append(r, PropertyAssertion(P.KEYWORDS, " padded")),
    rules.VALUE_CHARACTERS: lambda r: _append(r, PropertyAssertion(P.KEYWORDS, "bell\x07")),
    rules.OTHER_LABEL: lambda r: _append(r, PropertyAssertion(P.RELATED_PLACE, "Paris", OtherPlace("event place"))),
    rules.NORMALIZED_PLACEMENT: lambda r: _append(r, PropertyAssertion(P.KEYWORDS, "1878", None, IsoDate(1878))),
    rules.NORMALIZED_CONSISTENCY: lambda r: _append(r, PropertyAssertion(P.CREATION_DATE, "1878", None, IsoDate(1900))),
    rules.DIGITAL_COUNTERPART_URL: lambda r: replace(r, digital_counterpart="not a url"),
    rules.DIGITAL_COUNTERPART_DISTINCT: lambda r: replace(
        _append(r, PropertyAssertion(P.EXTERNAL_LINK, "https://example.org/x")),
        digital_counterpart="https://example.org/x",
    ),
    rules.EXTENSION_KEY: lambda r: replace(r, extensions=(("Title", "v"),)),
    rules.EXTENSION_VALUE: lambda r: replace(r, extensions=(("ju:note", ""),)),
}


@pytest.mark.parametrize("rule", sorted(MUTATIONS))
@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_each_mutation_is_caught(rule, name):
    assert rule in _rules(MUTATIONS[rule](load_fixture(name)))


@pytest.mark.parametrize(
    "raw, expected",
    [("28.12.1852", IsoDate(1852, 12, 28)), ("1878", IsoDate(1878)), ("circa 1850", None), ("31.02.1850", None)],
)
def test_normalize_dates(raw, expected):
    record = PivotRecord.build(
        [PropertyAssertion(P.TITLE, "X"), PropertyAssertion(P.IDENTIFIER, "Y"), PropertyAssertion(P.CREATION_DATE, raw)]
    )
    date = normalize_dates(record).assertions[2]
    assert date.normalized == expected
    assert date.value == raw


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_normalize_is_idempotent_and_valid(name):
    once = normalize(load_fixture(name))
    assert normalize(once) == once
    assert validate_pivot(once) == []


def test_language_names_gain_codes():
    record = normalize(load_fixture("obituary"))
    assert record.first(P.LANGUAGE).normalized == LanguageCode("fr")


def test_normalized_values_survive_interchange():
    record = normalize(load_fixture("manuscript"))
    assert parse_pivot(serialize_pivot(record)) == record
