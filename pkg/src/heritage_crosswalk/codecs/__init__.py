"""Wire formats for the five target standards."""

from __future__ import annotations

from ..errors import WrongStandard
from ..standards import MediaKind, Standard
from .ds import decode_ds, encode_ds
from .model import (
    DEFAULT_BASE_URI,
    UNKNOWN,
    Document,
    Node,
    TargetModel,
    canonical_order,
    is_absolute_uri,
    mint_uri,
    model_problems,
)
from .turtle import decode_turtle, encode_turtle, parse_turtle
from .xmlcodec import decode_xml, encode_xml

_ENCODERS = {MediaKind.XML: encode_xml, MediaKind.TURTLE: encode_turtle, MediaKind.JSON: encode_ds}
_DECODERS = {MediaKind.XML: decode_xml, MediaKind.TURTLE: decode_turtle, MediaKind.JSON: decode_ds}


def encode(model: TargetModel) -> Document:
    return _ENCODERS[model.standard.media_kind](model)


def decode(document: Document | str | bytes, standard: Standard | None = None) -> TargetModel:
    """Read a document; ``standard`` is required when passing raw text."""
    if isinstance(document, Document):
        if standard is not None and standard is not document.standard:
            raise WrongStandard(f"document is {document.standard.name}, not {standard.name}")
        standard = document.standard
    elif standard is None:
        raise TypeError("decode() needs a standard for raw text")
    return _DECODERS[standard.media_kind](document, standard)


__all__ = [
    "DEFAULT_BASE_URI",
    "UNKNOWN",
    "Document",
    "Node",
    "TargetModel",
    "canonical_order",
    "decode",
    "decode_ds",
    "decode_turtle",
    "decode_xml",
    "encode",
    "encode_ds",
    "encode_turtle",
    "encode_xml",
    "is_absolute_uri",
    "mint_uri",
    "model_problems",
    "parse_turtle",
]
