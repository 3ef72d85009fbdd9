"""Comma-separated I/O: required header, ``#`` comment lines skipped."""

from __future__ import annotations

import json

import numpy as np

from .errors import MLFilterError

__all__ = ["CSVFormatError", "read_table", "read_signal_csv", "format_table", "manifest_line"]

# relative deviation of any step from the mean step that still counts as uniform
GRID_RTOL = 1e-9


class CSVFormatError(MLFilterError, ValueError):
    """Malformed CSV input; the message carries the 1-based line number."""


def read_table(text: str) -> tuple[list[str], np.ndarray, list[int]]:
    """Parse CSV text into ``(header, float rows, line number of each row)``."""
    header = None
    rows = []
    linenos = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if header is None:
            header = cells
            continue
        if len(cells) != len(header):
            raise CSVFormatError(f"line {lineno}: expected {len(header)} fields, got {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
            linenos.append(lineno)
        except ValueError:
            raise CSVFormatError(f"line {lineno}: non-numeric field in {line!r}") from None
    if header is None:
        raise CSVFormatError("no header line found")
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return header, data, linenos


def read_signal_csv(text: str, default_dt: float | None = None):
    """Read ``t,y`` columns; return ``(t, y, dt)`` after checking the grid is uniform."""
    header, data, linenos = read_table(text)
    try:
        it, iy = header.index("t"), header.index("y")
    except ValueError:
        raise CSVFormatError(f"line 1: header must contain 't' and 'y' columns, got {header}") from None
    t, y = data[:, it], data[:, iy]
    if len(t) == 0:
        raise CSVFormatError("no data rows")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(y))):
        raise CSVFormatError("non-finite value in data")
    if len(t) == 1:
        if default_dt is None:
            raise CSVFormatError("a single sample needs an explicit dt")
        return t, y, float(default_dt)
    steps = np.diff(t)
    dt = (t[-1] - t[0]) / (len(t) - 1)
    if not dt > 0.0:
        raise CSVFormatError("time column must be increasing")
    dev = np.abs(steps - dt) / dt
    bad = int(np.argmax(dev))
    if dev[bad] > GRID_RTOL:
        raise CSVFormatError(
            f"line {linenos[bad + 1]}: non-uniform time step {steps[bad]!r} (mean step {dt!r})"
        )
    return t, y, float(dt)


def format_table(header: list[str], columns, comments: list[str] = ()) -> str:
    """Render columns as CSV with shortest round-trip float formatting."""
    lines = [c if c.startswith("#") else "# " + c for c in comments]
    lines.append(",".join(header))
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def manifest_line(subcommand: str, params: dict, inputs=None, outputs=None,
                  calibrated: list[str] = ()) -> str:
    from . import __version__

    record = {
        "tool": "mlfilt",
        "version": __version__,
        "subcommand": subcommand,
        "params": params,
        "input": inputs,
        "output": outputs,
    }
    if calibrated:
        record["calibrated_defaults"] = sorted(calibrated)
    return "# manifest " + json.dumps(record, sort_keys=True)
