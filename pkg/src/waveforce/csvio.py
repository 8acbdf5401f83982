"""CSV reading and writing with reproducible formatting.

Numbers are written as the shortest decimal string that round-trips the
64-bit float exactly (Python's repr), '.' as decimal separator, LF line
endings. Identical data therefore always produces byte-identical files.

Three layouts:
  series - one value per line, no header (flux measurements, profiles)
  matrix - comma-separated rows, no header (fields, system matrices)
  rows   - one header line, then comma-separated records (tables, metrics)
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def fmt(x) -> str:
    """Shortest exact decimal representation of a 64-bit float."""
    return repr(float(x))


def write_series(path, values):
    """One value per line, order preserved, no header."""
    values = np.asarray(values, dtype=float).reshape(-1)
    with open(path, "w", newline="\n") as fh:
        for v in values:
            fh.write(fmt(v) + "\n")


def read_series(path) -> np.ndarray:
    """Read a one-value-per-line file; blank lines are ignored."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(float(line))
    return np.array(out)


def write_matrix(path, values):
    """Comma-separated rows, no header."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError(f"matrix must be 2-dimensional, got shape {values.shape}")
    with open(path, "w", newline="\n") as fh:
        for row in values:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    """Read a headerless comma-separated numeric file."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split(",")])
    return np.array(rows)


def write_rows(path, header, rows):
    """Header line, then one comma-separated record per row.

    Cells that are strings pass through verbatim; everything else is
    formatted as a float.
    """
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(c if isinstance(c, str) else fmt(c) for c in row) + "\n")


def read_rows(path):
    """Read a headered CSV; returns (header, list of string-cell rows)."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        return [], []
    header = lines[0].split(",")
    return header, [ln.split(",") for ln in lines[1:]]


def ensure_dir(path) -> Path:
    """Create a directory (parents included) if needed and return it."""
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
