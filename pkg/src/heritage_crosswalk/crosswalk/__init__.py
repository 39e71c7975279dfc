"""The crosswalk table and the engine that applies it."""

from .engine import (
    Ambiguity,
    FieldDiff,
    LossEntry,
    LossReport,
    exact_diff,
    exact_projection,
    exact_properties,
    map_backward,
    map_forward,
)
from .matrix import Matrix, coverage_matrix, render_cell
from .table import (
    Alternative,
    Approximate,
    Composite,
    ControlledValue,
    CrosswalkTable,
    Exact,
    FixedPriority,
    MappingRule,
    NameFormResolver,
    Resolution,
    RoleResolver,
    Unmappable,
    builtin_table,
    kind_name,
    kind_paths,
)

__all__ = [
    "Alternative",
    "Ambiguity",
    "Approximate",
    "Composite",
    "ControlledValue",
    "CrosswalkTable",
    "Exact",
    "FieldDiff",
    "FixedPriority",
    "LossEntry",
    "LossReport",
    "MappingRule",
    "Matrix",
    "NameFormResolver",
    "Resolution",
    "RoleResolver",
    "Unmappable",
    "builtin_table",
    "coverage_matrix",
    "exact_diff",
    "exact_projection",
    "exact_properties",
    "kind_name",
    "kind_paths",
    "map_backward",
    "map_forward",
    "render_cell",
]
