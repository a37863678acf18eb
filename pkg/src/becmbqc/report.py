"""
Report serialization.

JSON output has a fixed key order and prints every float with 17
significant digits, so equal inputs give byte-identical files. Complex
numbers are written as [re, im] pairs. CSV rows carry the same values,
flattened into dotted column names.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable

import numpy as np

SCHEMA = "becmbqc.report/1"


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _plain(obj: Any) -> Any:
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def dumps(obj: Any, indent: int | None = 2, _level: int = 0) -> str:
    obj = _plain(obj)
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(_plain(v), (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + ",".join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def reports_document(reports: Iterable[dict], command: str) -> dict:
    return {"schema": SCHEMA, "command": command, "reports": list(reports)}


def flatten(d: Any, prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    d = _plain(d)
    if isinstance(d, dict):
        for k, v in d.items():
            out.update(flatten(v, f"{prefix}{k}."))
    elif isinstance(d, (list, tuple)):
        for i, v in enumerate(d):
            out.update(flatten(v, f"{prefix}{i}."))
    else:
        out[prefix[:-1]] = d
    return out


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def to_csv(rows: list[dict]) -> str:
    flat = [flatten(r) for r in rows]
    header: list[str] = []
    for f in flat:
        for k in f:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for f in flat:
        w.writerow([_cell(f.get(k)) for k in header])
    return buf.getvalue()
