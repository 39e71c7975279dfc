"""Exception hierarchy shared by every layer of the crosswalk."""

from __future__ import annotations


class CrosswalkError(Exception):
    """Base class for all errors raised by this package."""


class MalformedDocument(CrosswalkError):
    """Input bytes do not parse under their declared syntax."""


class SchemaViolation(CrosswalkError):
    """A document parses but breaks the pivot schema or record invariants."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class EmptyValue(SchemaViolation):
    """An assertion value is empty (absent properties are omitted instead)."""


class UnknownQualifier(CrosswalkError):
    """A role resolver cannot place a free-form ``Other(label)`` qualifier."""


class CodecError(CrosswalkError):
    """Base class for wire-format failures."""


class InvalidPath(CodecError):
    """A model node uses a path outside the target standard's vocabulary."""


class WrongStandard(CodecError):
    """The document is well formed but is not a record of the expected standard."""


class InvalidBase(CrosswalkError):
    """A base URI is not absolute or does not end in ``/``."""
