"""Deterministic CSV and JSON writers with a provenance header."""

from __future__ import annotations

import io
import json
import math

from . import __version__

NUMBER_FORMAT = "%.12g"


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    value = float(value)
    if math.isnan(value):
        return "nan"
    return NUMBER_FORMAT % value


def _clean(obj):
    """Make ``obj`` JSON-safe with a fixed float rendering."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    try:
        value = float(obj)
    except (TypeError, ValueError):
        return str(obj)
    if not math.isfinite(value):
        return None
    return float(NUMBER_FORMAT % value)


def provenance(config: dict, shape: str | None = None, **extra) -> dict:
    info = {"artifact": "kerrsq", "version": __version__, "config": config}
    if shape is not None:
        info["envelope_shape"] = shape
    info.update(extra)
    return _clean(info)


def render_csv(columns, rows, header: dict) -> str:
    buf = io.StringIO()
    for line in json.dumps(header, indent=1, sort_keys=True).splitlines():
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(payload: dict, header: dict) -> str:
    doc = {"provenance": header, **_clean(payload)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
