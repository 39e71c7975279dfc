"""Digital Scriptorium records as flat JSON.

The object holds ``"@id"`` (the record URI) and one key per field name. A
field with one value is a string; repeated fields become a list.
"""

from __future__ import annotations

import json

from ..errors import CodecError, InvalidPath, MalformedDocument, WrongStandard
from ..standards import ElementPath, MediaKind, Standard
from . import vocabulary as vocab
from .model import UNKNOWN, Document, Node, TargetModel, canonical_order, model_problems

ID_KEY = "@id"


def encode_ds(model: TargetModel) -> Document:
    problems = model_problems(model)
    if problems:
        raise CodecError(f"invalid {model.standard.name} model: {problems[0]}")
    known = vocab.vocabulary(model.standard)
    fields: dict[str, list[str]] = {}
    for node in canonical_order(model.standard, model.nodes):
        if node.unknown or node.path not in known:
            raise InvalidPath(f"{node.path.render()} is not a Digital Scriptorium field")
        fields.setdefault(node.path.path[0], []).append(node.value)
    obj: dict[str, object] = {ID_KEY: model.record_uri}
    for key, values in fields.items():
        obj[key] = values[0] if len(values) == 1 else values
    text = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    return Document(model.standard, text, MediaKind.JSON)


def _as_text(value) -> str | None:
    if value is None:
        return None
    if isinstance(value, str):
        return value.strip()
    return json.dumps(value, ensure_ascii=False)


def decode_ds(document: Document | str | bytes, standard: Standard = Standard.DIGITAL_SCRIPTORIUM) -> TargetModel:
    text = document.text if isinstance(document, Document) else document
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise WrongStandard("a Digital Scriptorium record is a JSON object")
    record_uri = obj.get(ID_KEY)
    if not isinstance(record_uri, str) or not record_uri.strip():
        raise WrongStandard(f"missing {ID_KEY!r} record URI")

    known = vocab.vocabulary(standard)
    nodes = []
    for key, raw in obj.items():
        if key == ID_KEY:
            continue
        path = ElementPath(standard, (key,))
        if path not in known:
            path = ElementPath(standard, (UNKNOWN, key))
        for item in raw if isinstance(raw, list) else [raw]:
            value = _as_text(item)
            if value:
                nodes.append(Node(path, value))
    return TargetModel(standard, record_uri.strip(), canonical_order(standard, nodes))
