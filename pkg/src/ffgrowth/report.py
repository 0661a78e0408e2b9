"""Plain-text, JSON and CSV rendering of report dictionaries."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .sets import FSet


def plain(obj):
    """Convert report values into JSON-compatible Python objects."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, FSet):
        return obj.to_list()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, float):
        return round(obj, 6)
    return obj


def _text_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _text(data, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, v in data.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{key}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_text_value(x)}" for k, x in item.items()))
        else:
            lines.append(f"{pad}{key}: {_text_value(v)}")
    return lines


def _csv(data) -> str:
    rows = data if isinstance(data, list) else [
        {k: v for k, v in data.items() if not isinstance(v, (dict, list))}]
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(rows[0].keys())
    for row in rows:
        w.writerow("" if v is None else _text_value(v) if isinstance(v, (bool, list)) else v
                   for v in row.values())
    return buf.getvalue()


def render(data, fmt: str = "text") -> str:
    data = plain(data)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        return _csv(data)
    if isinstance(data, list):
        return "\n".join("\n".join(_text(d)) + "\n" for d in data)
    return "\n".join(_text(data)) + "\n"
