"""Element, predicate and field names each codec accepts."""

from __future__ import annotations

from functools import cache

from ..standards import ElementPath, Standard, term

# Written by the EDM codec for the digital counterpart, not by any rule.
EDM_IS_SHOWN_BY = term(Standard.EDM, "edm:isShownBy")


@cache
def vocabulary(standard: Standard) -> frozenset[ElementPath]:
    """Paths (with attributes and context) the standard's codec can write."""
    from ..crosswalk.table import builtin_table, kind_paths

    paths = set()
    for rule in builtin_table().for_standard(standard):
        paths.update(kind_paths(rule.kind))
    if standard is Standard.EDM:
        paths.add(EDM_IS_SHOWN_BY)
    return frozenset(paths)


@cache
def element_names(standard: Standard) -> frozenset[str]:
    return frozenset(name for path in vocabulary(standard) for name in path.path)


@cache
def path_prefixes(standard: Standard) -> frozenset[tuple[str, ...]]:
    """Proper prefixes of vocabulary paths; decoders descend through these."""
    out = set()
    for path in vocabulary(standard):
        for i in range(1, len(path.path)):
            out.add(path.path[:i])
    return frozenset(out)


def lookup(standard: Standard, names: tuple[str, ...], attributes: dict[str, str], context=None):
    """Best vocabulary match for a decoded element chain.

    Returns the path whose attributes are all present with equal values,
    preferring the one that matches the most attributes, or None.
    """
    best = None
    for path in vocabulary(standard):
        if path.path != names or path.context != context:
            continue
        if all(attributes.get(k) == v for k, v in path.attributes):
            if best is None or len(path.attributes) > len(best.attributes):
                best = path
    return best
