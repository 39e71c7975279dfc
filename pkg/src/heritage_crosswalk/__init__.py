"""Bidirectional crosswalk between a cultural-heritage pivot schema and five metadata standards."""

from .codecs import Document, Node, TargetModel, decode, encode, mint_uri
from .crosswalk import (
    Ambiguity,
    CrosswalkTable,
    LossReport,
    MappingRule,
    builtin_table,
    coverage_matrix,
    map_backward,
    map_forward,
)
from .errors import (
    CodecError,
    CrosswalkError,
    EmptyValue,
    InvalidBase,
    InvalidPath,
    MalformedDocument,
    SchemaViolation,
    UnknownQualifier,
    WrongStandard,
)
from .pivot import (
    PivotProperty,
    PivotRecord,
    PropertyAssertion,
    load_fixture,
    parse_pivot,
    serialize_pivot,
    validate_pivot,
)
from .reporting import BatchSummary, render_loss, summarize
from .standards import ElementPath, Standard

__all__ = [
    "Ambiguity",
    "BatchSummary",
    "CodecError",
    "CrosswalkError",
    "CrosswalkTable",
    "Document",
    "ElementPath",
    "EmptyValue",
    "InvalidBase",
    "InvalidPath",
    "LossReport",
    "MalformedDocument",
    "MappingRule",
    "Node",
    "PivotProperty",
    "PivotRecord",
    "PropertyAssertion",
    "SchemaViolation",
    "Standard",
    "TargetModel",
    "UnknownQualifier",
    "WrongStandard",
    "builtin_table",
    "coverage_matrix",
    "decode",
    "encode",
    "load_fixture",
    "map_backward",
    "map_forward",
    "mint_uri",
    "parse_pivot",
    "render_loss",
    "serialize_pivot",
    "summarize",
    "validate_pivot",
]
