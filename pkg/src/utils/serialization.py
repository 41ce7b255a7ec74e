"""Deterministic JSON / CSV writers

Every float is written with 17 significant digits so that any emitted value parses
back to the identical double. Infinite values become the string sentinels "+inf" /
"-inf", NaN becomes null. Keys keep insertion order, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from utils.constants import FLOAT_DIGITS


def format_float(x: float) -> str:
    """17-significant-digit representation of a finite float"""
    return f"{x:.{FLOAT_DIGITS}g}"


def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            out.append("null")
        elif math.isinf(x):
            out.append('"+inf"' if x > 0 else '"-inf"')
        else:
            out.append(format_float(x))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode({"re": obj.real, "im": obj.imag}, out)
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _encode(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _encode(value, out)
        out.append("]")
    elif is_dataclass(obj) and not isinstance(obj, type):
        _encode(asdict(obj), out)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Serialize to JSON text with 17-digit floats and inf sentinels

    Args:
        obj (Any): dicts, lists, tuples, numpy arrays, scalars, dataclasses

    Returns:
        str: JSON text
    """
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def write_csv(header: Sequence[str], columns: Iterable[Sequence[float]]) -> str:
    """Render equally long float columns as CSV text

    Args:
        header (Sequence[str]): Column names
        columns (Iterable[Sequence[float]]): Columns, one per header entry

    Returns:
        str: CSV text with a header row and "\\n" line endings
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow(
            "nan" if math.isnan(float(x)) else format_float(float(x)) for x in row
        )
    return buffer.getvalue()
