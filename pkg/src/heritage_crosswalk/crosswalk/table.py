"""The crosswalk rule table: one mapping rule per (property, standard) cell.

Mapping kinds:

* ``Exact``: one element, read back unambiguously.
* ``Approximate``: one element whose meaning differs, or which is shared
  with another property so it cannot be told apart on the way back.
* ``Alternative``: several candidate elements; a resolver picks one.
* ``Composite``: the value is written to every listed element.
* ``Unmappable``: the standard has nowhere to put the value.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Union

from ..errors import UnknownQualifier
from ..pivot.model import (
    AgentRole,
    CorporateName,
    PivotProperty as P,
    PlaceKind,
    PropertyAssertion,
    Qualifier,
    qualifier_text,
)
from ..standards import ElementPath, Standard, term, xml_path

DC = Standard.DUBLIN_CORE
EAD = Standard.EAD
MODS = Standard.MODS
EDM = Standard.EDM
DS = Standard.DIGITAL_SCRIPTORIUM

ORIGINATION = "origination"


@dataclass(frozen=True)
class Exact:
    path: ElementPath


@dataclass(frozen=True)
class Approximate:
    path: ElementPath
    note: str

    def __post_init__(self):
        if not self.note.strip():
            raise ValueError("approximate mapping needs a note")


@dataclass(frozen=True)
class Resolution:
    """Outcome of resolving one assertion; a note marks it approximate."""

    path: ElementPath
    note: str | None = None


@dataclass(frozen=True)
class ControlledValue:
    """Extra node written next to a resolved value, with a looked-up term.

    ``lookup`` maps lower-cased source values to controlled terms; values
    without an entry produce no extra node.
    """

    path: ElementPath
    lookup: tuple[tuple[str, str], ...]

    def term_for(self, value: str) -> str | None:
        return dict(self.lookup).get(value.lower())


@dataclass(frozen=True)
class FixedPriority:
    preferred: ElementPath
    parallel: tuple[ControlledValue, ...] = ()

    def resolve(self, assertion: PropertyAssertion) -> Resolution:
        return Resolution(self.preferred)

    def reachable(self):
        yield self.preferred, None


@dataclass(frozen=True)
class RoleResolver:
    """Places qualified assertions by their qualifier.

    Unqualified assertions use ``default``; ``Other(label)`` qualifiers,
    which have no entry, raise :class:`UnknownQualifier`.
    """

    roles: tuple[tuple[Qualifier, Resolution], ...]
    default: Resolution

    def resolve(self, assertion: PropertyAssertion) -> Resolution:
        if assertion.qualifier is None:
            return self.default
        for qualifier, resolution in self.roles:
            if qualifier == assertion.qualifier:
                return resolution
        raise UnknownQualifier(
            f"no placement for {assertion.property.value} qualifier "
            f"{qualifier_text(assertion.qualifier)!r}"
        )

    def reachable(self):
        for qualifier, resolution in self.roles:
            yield resolution.path, qualifier
        yield self.default.path, None


@dataclass(frozen=True)
class NameFormResolver:
    """Chooses between personal and corporate name elements."""

    personal: Resolution
    corporate: Resolution

    def resolve(self, assertion: PropertyAssertion) -> Resolution:
        if isinstance(assertion.normalized, CorporateName):
            return self.corporate
        return self.personal

    def reachable(self):
        yield self.personal.path, None
        yield self.corporate.path, None


Resolver = Union[FixedPriority, RoleResolver, NameFormResolver]


@dataclass(frozen=True)
class Alternative:
    options: tuple[ElementPath, ...]
    resolver: Resolver

    def __post_init__(self):
        if len(self.options) < 2:
            raise ValueError("alternative mapping needs at least two options")
        for path, _ in self.resolver.reachable():
            if path not in self.options:
                raise ValueError(f"resolver target {path.render()} is not an option")


@dataclass(frozen=True)
class Composite:
    parts: tuple[ElementPath, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("composite mapping needs at least two parts")


@dataclass(frozen=True)
class Unmappable:
    pass


MappingKind = Union[Exact, Approximate, Alternative, Composite, Unmappable]


def kind_name(kind: MappingKind) -> str:
    return type(kind).__name__


def kind_paths(kind: MappingKind) -> tuple[ElementPath, ...]:
    """Every path a rule may write, in display order."""
    if isinstance(kind, (Exact, Approximate)):
        return (kind.path,)
    if isinstance(kind, Alternative):
        return kind.options
    if isinstance(kind, Composite):
        return kind.parts
    return ()


@dataclass(frozen=True)
class MappingRule:
    property: P
    standard: Standard
    kind: MappingKind
    forward_only: bool = False

    def __post_init__(self):
        for path in kind_paths(self.kind):
            if path.standard is not self.standard:
                raise ValueError(f"{self.property.value}/{self.standard.name}: path from {path.standard.name}")


@dataclass(frozen=True)
class CrosswalkTable:
    rules: tuple[MappingRule, ...]
    _index: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for rule in self.rules:
            key = (rule.property, rule.standard)
            if key in index:
                raise ValueError(f"duplicate rule for {rule.property.value}/{rule.standard.name}")
            index[key] = rule
        missing = [(p, s) for p in P for s in Standard if (p, s) not in index]
        if missing:
            raise ValueError(f"table is not total; missing {len(missing)} cells, e.g. {missing[0]}")
        object.__setattr__(self, "_index", index)

    def rule(self, prop: P, standard: Standard) -> MappingRule:
        return self._index[(prop, standard)]

    def for_standard(self, standard: Standard) -> list[MappingRule]:
        return [self._index[(p, standard)] for p in P]

    def with_rule(self, new_rule: MappingRule) -> "CrosswalkTable":
        """Copy of the table with one cell replaced."""
        key = (new_rule.property, new_rule.standard)
        return CrosswalkTable(tuple(new_rule if (r.property, r.standard) == key else r for r in self.rules))


def _x(standard, *names, **kw):
    return xml_path(standard, *names, **kw)


def _approx(path, note):
    return Approximate(path, note)


def _rule(prop, standard, kind, forward_only=False):
    return MappingRule(prop, standard, kind, forward_only)


DEFAULT_EDM_TYPES: Mapping[str, str] = {
    "letter": "TEXT",
    "placard": "TEXT",
    "obituary": "TEXT",
    "hourglass": "TEXT",
    "leaflet": "TEXT",
}

_SENDER_AS_CREATOR = "sender rendered as creator; authorship of a letter is not authorship of a work"
_SHARED_CREATOR = "dc:creator also receives creator-like related persons; the author cannot be singled out when reading back"


def _dc_rules() -> list[MappingRule]:
    t = lambda name: term(DC, name)  # noqa: E731
    contributor, creator = t("dc:contributor"), t("dc:creator")
    lost = lambda role: Resolution(contributor, f"{role.value.lower()} rendered as contributor; the role is lost")  # noqa: E731
    persons = RoleResolver(
        roles=(
            (AgentRole.SENDER, Resolution(creator, _SENDER_AS_CREATOR)),
            (AgentRole.RECEIVER, lost(AgentRole.RECEIVER)),
            (AgentRole.CREATOR, Resolution(creator)),
            (AgentRole.ARTIST, Resolution(contributor)),
            (AgentRole.DECEASED, lost(AgentRole.DECEASED)),
            (AgentRole.MENTIONED, lost(AgentRole.MENTIONED)),
            (AgentRole.DEPICTED, lost(AgentRole.DEPICTED)),
        ),
        default=Resolution(contributor),
    )
    has_version = t("dcterms:hasVersion")
    return [
        _rule(P.TITLE, DC, Exact(t("dc:title"))),
        _rule(P.ALTERNATIVE_TITLE, DC, Exact(t("dcterms:alternative"))),
        _rule(P.AUTHOR, DC, _approx(creator, _SHARED_CREATOR)),
        _rule(P.TYPE_OF_DOCUMENT, DC, Exact(t("dc:type"))),
        _rule(P.LANGUAGE, DC, Exact(t("dc:language"))),
        _rule(P.IDENTIFIER, DC, Exact(t("dc:identifier"))),
        _rule(P.PHYSICAL_EXTENT, DC, Exact(t("dc:format"))),
        _rule(P.MATERIAL_INFORMATION, DC, Unmappable()),
        _rule(P.PLACE_OF_ORIGIN, DC, Unmappable()),
        _rule(P.CREATION_DATE, DC, Exact(t("dcterms:created"))),
        _rule(P.CURRENT_LOCATION, DC, Unmappable()),
        _rule(P.CUSTODY_HISTORY, DC, Exact(t("dcterms:provenance"))),
        _rule(P.PUBLISHER, DC, Exact(t("dc:publisher"))),
        _rule(
            P.OTHER_EDITIONS,
            DC,
            Alternative((has_version, t("dcterms:isVersionOf")), FixedPriority(has_version)),
        ),
        _rule(
            P.RELATED_DATE,
            DC,
            _approx(t("dcterms:temporal"), "temporal coverage keeps the date but not its event kind"),
        ),
        _rule(
            P.RELATED_PLACE,
            DC,
            _approx(t("dcterms:spatial"), "spatial coverage keeps the place but not its event kind"),
        ),
        _rule(P.RELATED_PERSON, DC, Alternative((contributor, creator), persons)),
        _rule(P.EXTERNAL_LINK, DC, Exact(t("dc:relation"))),
        _rule(P.DESCRIPTION_NOTES, DC, Exact(t("dc:description"))),
        _rule(P.TYPOGRAPHY_NOTE, DC, Unmappable()),
        _rule(P.KEYWORDS, DC, Exact(t("dc:subject"))),
    ]


def _ead_rules() -> list[MappingRule]:
    persname = _x(EAD, "persname", context=ORIGINATION)
    corpname = _x(EAD, "corpname", context=ORIGINATION)
    return [
        _rule(P.TITLE, EAD, Exact(_x(EAD, "unittitle"))),
        _rule(P.ALTERNATIVE_TITLE, EAD, Unmappable()),
        _rule(
            P.AUTHOR,
            EAD,
            Alternative(
                (persname, corpname),
                NameFormResolver(personal=Resolution(persname), corporate=Resolution(corpname)),
            ),
        ),
        _rule(P.TYPE_OF_DOCUMENT, EAD, Exact(_x(EAD, "controlaccess", "genreform"))),
        _rule(P.LANGUAGE, EAD, Exact(_x(EAD, "langmaterial", "language"))),
        _rule(P.IDENTIFIER, EAD, Exact(_x(EAD, "unitid"))),
        _rule(P.PHYSICAL_EXTENT, EAD, Exact(_x(EAD, "physdesc", "extent"))),
        _rule(P.MATERIAL_INFORMATION, EAD, Exact(_x(EAD, "physdesc"))),
        _rule(P.PLACE_OF_ORIGIN, EAD, Exact(_x(EAD, "geogname", context=ORIGINATION))),
        _rule(P.CREATION_DATE, EAD, Exact(_x(EAD, "unitdate"))),
        _rule(P.CURRENT_LOCATION, EAD, Exact(_x(EAD, "physloc"))),
        _rule(P.CUSTODY_HISTORY, EAD, Exact(_x(EAD, "custodhist"))),
        _rule(
            P.PUBLISHER,
            EAD,
            _approx(_x(EAD, "bibref"), "bibref is a citation; a publisher statement is carried as one"),
            forward_only=True,
        ),
        _rule(
            P.OTHER_EDITIONS,
            EAD,
            _approx(_x(EAD, "bibliography"), "other editions listed as bibliography entries"),
            forward_only=True,
        ),
        _rule(P.RELATED_DATE, EAD, Unmappable()),
        _rule(P.RELATED_PLACE, EAD, Exact(_x(EAD, "geogname"))),
        _rule(P.RELATED_PERSON, EAD, Exact(_x(EAD, "persname"))),
        _rule(P.EXTERNAL_LINK, EAD, Unmappable()),
        _rule(P.DESCRIPTION_NOTES, EAD, Exact(_x(EAD, "scopecontent"))),
        _rule(P.TYPOGRAPHY_NOTE, EAD, Unmappable()),
        _rule(P.KEYWORDS, EAD, Exact(_x(EAD, "controlaccess", "subject"))),
    ]


def _mods_rules() -> list[MappingRule]:
    place = _x(MODS, "originInfo", "place")
    abstract, note, toc = _x(MODS, "abstract"), _x(MODS, "note"), _x(MODS, "tableOfContents")
    subject = _x(MODS, "subject")
    return [
        _rule(P.TITLE, MODS, Exact(_x(MODS, "titleInfo"))),
        _rule(
            P.ALTERNATIVE_TITLE,
            MODS,
            Exact(_x(MODS, "titleInfo", attributes=(("type", "alternative"),))),
        ),
        _rule(P.AUTHOR, MODS, Exact(_x(MODS, "name"))),
        _rule(
            P.TYPE_OF_DOCUMENT,
            MODS,
            _approx(
                _x(MODS, "typeOfResource"),
                "typeOfResource expects a broad resource class; the document type is recorded as cataloged",
            ),
        ),
        _rule(P.LANGUAGE, MODS, Exact(_x(MODS, "language"))),
        _rule(P.IDENTIFIER, MODS, Exact(_x(MODS, "identifier"))),
        _rule(P.PHYSICAL_EXTENT, MODS, Exact(_x(MODS, "physicalDescription"))),
        _rule(P.MATERIAL_INFORMATION, MODS, Unmappable()),
        _rule(
            P.PLACE_OF_ORIGIN,
            MODS,
            _approx(place, "originInfo/place is shared with Current location; the two read back as one"),
        ),
        _rule(P.CREATION_DATE, MODS, Exact(_x(MODS, "originInfo", "dateCreated"))),
        _rule(
            P.CURRENT_LOCATION,
            MODS,
            _approx(place, "current holding place written as a place of origin event"),
            forward_only=True,
        ),
        _rule(
            P.CUSTODY_HISTORY,
            MODS,
            _approx(_x(MODS, "originInfo"), "custody history written as the text of an originInfo block"),
        ),
        _rule(P.PUBLISHER, MODS, Exact(_x(MODS, "originInfo", "publisher"))),
        _rule(
            P.OTHER_EDITIONS,
            MODS,
            _approx(_x(MODS, "originInfo", "edition"), "edition describes this object, not related editions"),
        ),
        _rule(
            P.RELATED_DATE,
            MODS,
            _approx(_x(MODS, "subject", "temporal"), "temporal subject keeps the date but not its event kind"),
        ),
        _rule(P.RELATED_PLACE, MODS, Unmappable()),
        _rule(P.RELATED_PERSON, MODS, Unmappable()),
        _rule(P.EXTERNAL_LINK, MODS, Exact(_x(MODS, "location", "url"))),
        _rule(P.DESCRIPTION_NOTES, MODS, Alternative((abstract, note, toc), FixedPriority(note))),
        _rule(P.TYPOGRAPHY_NOTE, MODS, Unmappable()),
        _rule(
            P.KEYWORDS,
            MODS,
            Alternative((subject, _x(MODS, "classification")), FixedPriority(subject)),
        ),
    ]


def _edm_rules(edm_types: Mapping[str, str]) -> list[MappingRule]:
    t = lambda name: term(EDM, name)  # noqa: E731
    contributor, creator = t("dc:contributor"), t("dc:creator")
    has_met, represents = t("edm:hasMet"), t("edm:isRepresentationOf")
    spatial, happened_at = t("dcterms:spatial"), t("edm:happenedAt")
    dc_type = t("dc:type")
    met = lambda role, why: Resolution(has_met, f"{role.value.lower()} rendered as someone the object has met; {why}")  # noqa: E731
    persons = RoleResolver(
        roles=(
            (AgentRole.SENDER, Resolution(creator, _SENDER_AS_CREATOR)),
            (AgentRole.RECEIVER, met(AgentRole.RECEIVER, "the letter's intent to reach them is lost")),
            (AgentRole.CREATOR, Resolution(creator)),
            (AgentRole.ARTIST, Resolution(contributor)),
            (AgentRole.DECEASED, met(AgentRole.DECEASED, "the role is lost")),
            (AgentRole.MENTIONED, met(AgentRole.MENTIONED, "the role is lost")),
            (AgentRole.DEPICTED, Resolution(represents)),
        ),
        default=Resolution(contributor),
    )
    places = RoleResolver(
        roles=(
            (PlaceKind.EVENT_PLACE, Resolution(happened_at)),
            (
                PlaceKind.SENDER_LOCATION,
                Resolution(spatial, "sender location rendered as spatial coverage; the kind is lost"),
            ),
        ),
        default=Resolution(spatial),
    )
    edm_type = ControlledValue(t("edm:type"), tuple(sorted((k.lower(), v) for k, v in edm_types.items())))
    has_version, relation = t("dcterms:hasVersion"), t("dc:relation")
    return [
        _rule(P.TITLE, EDM, Exact(t("dc:title"))),
        _rule(P.ALTERNATIVE_TITLE, EDM, Exact(t("dcterms:alternative"))),
        _rule(P.AUTHOR, EDM, _approx(creator, _SHARED_CREATOR)),
        _rule(
            P.TYPE_OF_DOCUMENT,
            EDM,
            Alternative(
                (dc_type, t("edm:hasType"), edm_type.path),
                FixedPriority(dc_type, parallel=(edm_type,)),
            ),
        ),
        _rule(P.LANGUAGE, EDM, Exact(t("dc:language"))),
        _rule(P.IDENTIFIER, EDM, Exact(t("dc:identifier"))),
        _rule(P.PHYSICAL_EXTENT, EDM, Exact(t("dcterms:extent"))),
        _rule(P.MATERIAL_INFORMATION, EDM, Unmappable()),
        _rule(
            P.PLACE_OF_ORIGIN,
            EDM,
            _approx(
                has_met,
                "EDM has no place of origin; edm:hasMet only states the object was once at this place",
            ),
        ),
        _rule(P.CREATION_DATE, EDM, Exact(t("dcterms:created"))),
        _rule(P.CURRENT_LOCATION, EDM, Exact(t("edm:currentLocation"))),
        _rule(P.CUSTODY_HISTORY, EDM, Exact(t("dcterms:provenance"))),
        _rule(P.PUBLISHER, EDM, Exact(t("dc:publisher"))),
        _rule(
            P.OTHER_EDITIONS,
            EDM,
            Alternative((has_version, t("dcterms:isVersionOf")), FixedPriority(has_version)),
        ),
        _rule(
            P.RELATED_DATE,
            EDM,
            _approx(has_met, "date rendered as a time the object has met; the event kind is lost"),
        ),
        _rule(P.RELATED_PLACE, EDM, Alternative((spatial, happened_at), places)),
        _rule(
            P.RELATED_PERSON,
            EDM,
            Alternative((contributor, creator, has_met, represents), persons),
        ),
        _rule(
            P.EXTERNAL_LINK,
            EDM,
            Alternative((relation, t("edm:isRelatedTo")), FixedPriority(relation)),
        ),
        _rule(P.DESCRIPTION_NOTES, EDM, Exact(t("dc:description"))),
        _rule(P.TYPOGRAPHY_NOTE, EDM, Unmappable()),
        _rule(P.KEYWORDS, EDM, Exact(t("dc:subject"))),
    ]


def _ds_rules() -> list[MappingRule]:
    k = lambda name: term(DS, name)  # noqa: E731
    return [
        _rule(P.TITLE, DS, Exact(k("Title"))),
        _rule(P.ALTERNATIVE_TITLE, DS, Unmappable()),
        _rule(P.AUTHOR, DS, Exact(k("Author"))),
        _rule(P.TYPE_OF_DOCUMENT, DS, Unmappable()),
        _rule(P.LANGUAGE, DS, Exact(k("Language"))),
        _rule(P.IDENTIFIER, DS, Exact(k("Shelfmark"))),
        _rule(P.PHYSICAL_EXTENT, DS, Exact(k("Physical Description"))),
        _rule(P.MATERIAL_INFORMATION, DS, Unmappable()),
        _rule(P.PLACE_OF_ORIGIN, DS, Exact(k("Place"))),
        _rule(P.CREATION_DATE, DS, Exact(k("Date"))),
        _rule(
            P.CURRENT_LOCATION,
            DS,
            _approx(k("Holding Institution"), "field names an institution; the pivot records its place"),
        ),
        _rule(P.CUSTODY_HISTORY, DS, Unmappable()),
        _rule(P.PUBLISHER, DS, Unmappable()),
        _rule(P.OTHER_EDITIONS, DS, Unmappable()),
        _rule(P.RELATED_DATE, DS, Unmappable()),
        _rule(P.RELATED_PLACE, DS, Unmappable()),
        _rule(P.RELATED_PERSON, DS, Unmappable()),
        _rule(P.EXTERNAL_LINK, DS, Exact(k("Institutional Record"))),
        _rule(P.DESCRIPTION_NOTES, DS, Exact(k("Note"))),
        _rule(P.TYPOGRAPHY_NOTE, DS, Unmappable()),
        _rule(P.KEYWORDS, DS, Exact(k("Keyword(s)"))),
    ]


def builtin_table(edm_types: Mapping[str, str] | None = None) -> CrosswalkTable:
    """The 105-cell crosswalk.

    ``edm_types`` maps document types (case-insensitive) to the controlled
    ``edm:type`` value written alongside ``dc:type``.
    """
    if edm_types is None:
        return _BUILTIN
    return _build(edm_types)


def _build(edm_types) -> CrosswalkTable:
    return CrosswalkTable(
        tuple(_dc_rules() + _ead_rules() + _mods_rules() + _edm_rules(edm_types) + _ds_rules())
    )


_BUILTIN = _build(DEFAULT_EDM_TYPES)

