"""Set files: one JSON document carrying the field descriptor and elements.

    {"elements": [0, 1], "k": 1, "modulus": [0, 1], "p": 5}

Keys are sorted and elements are sorted and deduplicated, so equal sets
serialize to identical bytes.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import FFGrowthError, SetFileError
from .field import build_field
from .sets import FSet

REQUIRED = ("p", "k", "modulus", "elements")


def dumps(A: FSet) -> str:
    doc = dict(A.field.spec.descriptor(), elements=A.to_list())
    return json.dumps(doc, sort_keys=True) + "\n"


def loads(text: str) -> FSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetFileError(f"not a set file: {exc}") from None
    if not isinstance(doc, dict):
        raise SetFileError("set file must be a JSON object")
    missing = [key for key in REQUIRED if key not in doc]
    if missing:
        raise SetFileError(f"set file missing keys: {', '.join(missing)}")
    try:
        p, k = int(doc["p"]), int(doc["k"])
        modulus = [int(c) for c in doc["modulus"]]
        elements = [int(e) for e in doc["elements"]]
    except (TypeError, ValueError):
        raise SetFileError("p, k, modulus and elements must be integers") from None
    try:
        F = build_field(p, k, modulus if k > 1 else None)
    except FFGrowthError as exc:
        raise SetFileError(f"bad field descriptor: {exc}") from None
    if k == 1 and modulus not in ([0, 1], []):
        raise SetFileError(f"prime-field modulus must be the placeholder [0, 1], got {modulus}")
    bad = [e for e in elements if not 0 <= e < F.q]
    if bad:
        raise SetFileError(f"elements out of range [0, {F.q}): {bad[:5]}")
    return FSet(F, elements)


def read_set(path) -> FSet:
    return loads(Path(path).read_text())


def write_set(A: FSet, path) -> None:
    Path(path).write_text(dumps(A))
