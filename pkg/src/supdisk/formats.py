"""Configuration documents and run reports.

The configuration file is a small JSON document::

    {"schema_version": 1, "mode": "lattice", "points": [[0, 0], [1, 0]]}

Lattice points are integers; continuous points are decimal strings parsed
to the nearest double (serializing floats as their shortest round-trip
decimal keeps golden files stable across platforms).  Reports are JSON
with a provenance block carrying the seed, tolerances, and version.
"""

from __future__ import annotations

import csv
import io
import json

from . import __version__
from .errors import NonFinite, ParseError
from .geometry import ANGLE_GUARD, GUARD, RESIDUAL_TOL
from .graph import CONTINUOUS, LATTICE, Configuration

SCHEMA_VERSION = 1


def parse_config(data):
    """Parse a configuration document; raises position-annotated errors."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema_version: unsupported value {version!r}")
    mode = doc.get("mode")
    if mode not in (LATTICE, CONTINUOUS):
        raise ParseError(f"mode: expected 'lattice' or 'continuous', got {mode!r}")
    raw = doc.get("points")
    if not isinstance(raw, list) or not raw:
        raise ParseError("points: expected a non-empty list")
    pts = []
    for k, item in enumerate(raw):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"points[{k}]: expected a pair")
        x, y = item
        if mode == LATTICE:
            if not (isinstance(x, int) and isinstance(y, int)) or isinstance(
                x, bool
            ) or isinstance(y, bool):
                raise ParseError(f"points[{k}]: lattice coordinates must be integers")
            pts.append((x, y))
        else:
            try:
                fx, fy = float(x), float(y)
            except (TypeError, ValueError):
                raise ParseError(
                    f"points[{k}]: continuous coordinates must be decimal strings"
                ) from None
            pts.append((fx, fy))
    try:
        return Configuration(tuple(pts), mode)
    except NonFinite as exc:
        raise NonFinite(f"points: {exc}") from None


def dump_config(config):
    """Serialize a configuration; the inverse of parse_config."""
    if config.mode == LATTICE:
        pts = [[x, y] for x, y in config.points]
    else:
        pts = [[repr(x), repr(y)] for x, y in config.points]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "mode": config.mode,
        "points": pts,
    }
    return json.dumps(doc, indent=2) + "\n"


def tolerances():
    return {
        "guard": GUARD,
        "angle_guard": ANGLE_GUARD,
        "residual_tol": RESIDUAL_TOL,
    }


def make_report(command, result, *, seed=None, extra=None):
    """Structured record of one run with a provenance block."""
    report = {
        "command": command,
        "provenance": {
            "tool": "supdisk",
            "version": __version__,
            "seed": seed,
            "tolerances": tolerances(),
        },
        "result": result,
    }
    if extra:
        report["provenance"].update(extra)
    return report


def dumps_report(report):
    return json.dumps(report, indent=2, default=_jsonable) + "\n"


def _jsonable(obj):
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "__dict__"):
        return obj.__dict__
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_delimited(rows, header, path=None):
    """CSV table; returns the text when no path is given."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text
