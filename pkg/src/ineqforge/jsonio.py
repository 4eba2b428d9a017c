"""Deterministic JSON output: sorted-free, fixed key order as given, floats
written with 17 significant digits so every value round-trips."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources


def _float(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _encode(obj, indent, level):
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "item") and not isinstance(obj, (list, tuple, dict)):
        return _encode(obj.item(), indent, level)   # numpy scalars
    if indent is None:
        sep, pad, end = ", ", "", ""
    else:
        sep = ",\n" + " " * (indent * (level + 1))
        pad = "\n" + " " * (indent * (level + 1))
        end = "\n" + " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(str(k)) + ": " + _encode(v, indent, level + 1) for k, v in obj.items()]
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + pad + sep.join(_encode(v, indent, level + 1) for v in obj) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    return _encode(obj, indent, 0)


def load_schema(name: str) -> dict:
    """A JSON schema shipped with the package, by file stem."""
    text = resources.files("ineqforge").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
