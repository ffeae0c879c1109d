"""Canonical machine-readable output.

Artifacts must be byte-identical across reruns and survive a
parse/re-emit round trip, so floats are always printed with 17
significant digits (enough to pin down a double exactly), JSON keys are
sorted, and no volatile fields (timestamps, hostnames) ever appear.
"""

from __future__ import annotations

import csv
import io
import math


def float_repr(value: float) -> str:
    """Fixed 17-significant-digit representation of a double."""
    if not math.isfinite(value):
        raise ValueError(f"non-finite float {value!r} in artifact")
    return format(value, ".17g")


def _emit(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(repr(obj))
    elif isinstance(obj, float):
        parts.append(float_repr(obj))
    elif isinstance(obj, str):
        # JSON string escaping without the json module's float handling
        out = ['"']
        for ch in obj:
            if ch in ('"', "\\"):
                out.append("\\" + ch)
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        parts.append("".join(out))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {key!r}")
            if i:
                parts.append(",")
            _emit(key, parts)
            parts.append(":")
            _emit(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _emit(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} canonically")


def canonical_json(obj) -> str:
    """Canonical JSON text (sorted keys, .17g floats, trailing newline)."""
    parts: list[str] = []
    _emit(obj, parts)
    parts.append("\n")
    return "".join(parts)


def csv_text(header: list[str], rows) -> str:
    """CSV with a header row; floats rendered via float_repr."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            float_repr(cell) if isinstance(cell, float) else cell for cell in row
        ])
    return buf.getvalue()
