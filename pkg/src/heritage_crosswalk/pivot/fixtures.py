"""The three catalog descriptions used as golden records."""

from __future__ import annotations

from importlib import resources

from .interchange import parse_pivot
from .model import PivotRecord

FIXTURE_NAMES = ("manuscript", "placard", "obituary")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(name)
    return resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text("utf-8")


def load_fixture(name: str) -> PivotRecord:
    return parse_pivot(fixture_text(name))


def load_fixtures() -> dict[str, PivotRecord]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
