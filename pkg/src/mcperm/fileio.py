"""Reading matrices and polynomials from files.

Matrix JSON takes one of two shapes::

    {"rows": 2, "cols": 2, "entries": [["1", "1/2"], ["0", "-3"]]}
    {"rows": 5, "heights": [0, 1, 1, 3, 4]}

The first is a general matrix whose entries are rationals (ints or "p/q"
strings) or polynomial text; the second is a Ferrers matrix.  CSV files hold
one matrix row per line.  Polynomials are read as canonical text.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

from .errors import MCPermError
from .matrices import FerrersMatrix, MonotoneColumnMatrix
from .polyalg import Polynomial, as_rational, parse_polynomial


class InputError(MCPermError):
    """Malformed input; the message names the offending field."""


def parse_entry(value, where: str):
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not exact, write {value!r} as a fraction string")
    if isinstance(value, str):
        text = value.strip()
        try:
            return as_rational(Fraction(text))
        except (ValueError, ZeroDivisionError):
            pass
        try:
            p = parse_polynomial(text)
        except MCPermError as exc:
            raise InputError(f"{where}: cannot parse {value!r} ({exc})") from None
        return p.constant_value() if p.is_constant() else p
    raise InputError(f"{where}: expected a rational, got {value!r}")


def matrix_from_json(data) -> FerrersMatrix | list[list]:
    if not isinstance(data, dict):
        raise InputError("matrix JSON must be an object")
    if "heights" in data:
        heights = data["heights"]
        if not isinstance(heights, list) or not all(isinstance(h, int) for h in heights):
            raise InputError("heights: expected a list of integers")
        rows = data.get("rows", max(heights, default=0) or 1)
        if not isinstance(rows, int):
            raise InputError("rows: expected an integer")
        try:
            return FerrersMatrix(rows, tuple(heights))
        except MCPermError as exc:
            raise InputError(f"heights: {exc}") from None
    if "entries" not in data:
        raise InputError("entries: missing (or give heights for a Ferrers matrix)")
    entries = data["entries"]
    if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
        raise InputError("entries: expected a nonempty list of rows")
    out = [[parse_entry(c, f"entries[{i}][{j}]") for j, c in enumerate(row)]
           for i, row in enumerate(entries)]
    width = len(out[0])
    for i, row in enumerate(out):
        if len(row) != width:
            raise InputError(f"entries[{i}]: row has {len(row)} entries, expected {width}")
    for key, actual in (("rows", len(out)), ("cols", width)):
        if key in data and data[key] != actual:
            raise InputError(f"{key}: declared {data[key]} but entries have {actual}")
    return out


def matrix_from_csv(text: str) -> list[list]:
    rows = [r for r in csv.reader(text.splitlines()) if any(c.strip() for c in r)]
    if not rows:
        raise InputError("csv: no rows")
    out = [[parse_entry(c, f"row {i + 1}, column {j + 1}") for j, c in enumerate(row)]
           for i, row in enumerate(rows)]
    for i, row in enumerate(out):
        if len(row) != len(out[0]):
            raise InputError(f"row {i + 1}: has {len(row)} entries, expected {len(out[0])}")
    return out


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"input: cannot read {path} ({exc.strerror})") from None


def load_matrix(path) -> FerrersMatrix | list[list]:
    text = read_text(path)
    if str(path).lower().endswith(".csv"):
        return matrix_from_csv(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return matrix_from_json(data)


def as_monotone(M) -> MonotoneColumnMatrix:
    if isinstance(M, FerrersMatrix):
        return M.to_monotone()
    if any(isinstance(c, Polynomial) for row in M for c in row):
        raise InputError("entries: a monotone column matrix needs rational entries")
    try:
        return MonotoneColumnMatrix(M)
    except MCPermError as exc:
        raise InputError(f"entries: {exc}") from None


def as_rows(M) -> list[list]:
    return M.to_rows() if isinstance(M, FerrersMatrix) else M


def load_polynomial(path) -> Polynomial:
    text = read_text(path).strip()
    try:
        return parse_polynomial(text)
    except MCPermError as exc:
        raise InputError(f"polynomial: {exc}") from None


def load_json(path) -> dict:
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"input: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise InputError("input: expected a JSON object")
    return data
