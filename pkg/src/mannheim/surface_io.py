"""Surface definition files and plot-ready CSV/JSON exports.

A surface file is line oriented: `k = (...)`, `q = (...)`, `domain = [a, b]`,
optional `samples = n`; `#` starts a comment. Numbers in exports use the
shortest representation that round-trips, so re-reading a file reproduces
every value bit for bit.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .curves import CurveDef
from .errors import ExprSyntaxError, SurfaceFileError
from .surfaces import AnalyticRuledSurface, DEFAULT_SAMPLES, drall_grid, frame_grid

_KEYS = ("k", "q", "domain", "samples")

FRAME_COLUMNS = ("s", "q1", "q2", "q3", "h1", "h2", "h3", "a1", "a2", "a3",
                 "ds1_ds", "kappa", "drall")
OFFSET_COLUMNS = ("s", "c1", "c2", "c3", "q1", "q2", "q3")


def fmt(x: float) -> str:
    return repr(float(x))


def parse_surface_text(text: str) -> dict:
    """Raw fields of a surface file: k/q sources, domain, samples."""
    seen: dict = {}
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise SurfaceFileError("expected 'key = value'", lineno,
                                   len(line) - len(line.lstrip()) + 1)
        key_part, value = line.split("=", 1)
        key = key_part.strip()
        key_col = line.index(key) + 1 if key else 1
        if key not in _KEYS:
            raise SurfaceFileError(f"unknown key {key!r}", lineno, key_col)
        if key in seen:
            raise SurfaceFileError(f"duplicate {key!r} line", lineno, key_col)
        value_col = len(key_part) + 2 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if key in ("k", "q"):
            seen[key] = (value, lineno, value_col)
        elif key == "domain":
            if not (value.startswith("[") and value.endswith("]")):
                raise SurfaceFileError("domain must look like [a, b]",
                                       lineno, value_col)
            parts = value[1:-1].split(",")
            if len(parts) != 2:
                raise SurfaceFileError("domain needs two endpoints",
                                       lineno, value_col)
            try:
                lo, hi = float(parts[0]), float(parts[1])
            except ValueError:
                raise SurfaceFileError("domain endpoints must be numbers",
                                       lineno, value_col)
            if not lo < hi:
                raise SurfaceFileError("domain must be increasing",
                                       lineno, value_col)
            seen["domain"] = (lo, hi)
        else:
            try:
                n = int(value)
            except ValueError:
                raise SurfaceFileError("samples must be an integer",
                                       lineno, value_col)
            if n < 2:
                raise SurfaceFileError("samples must be at least 2",
                                       lineno, value_col)
            seen["samples"] = n
    for key in ("k", "q", "domain"):
        if key not in seen:
            raise SurfaceFileError(f"missing '{key} =' line", lineno + 1, 1)
    return seen


def surface_from_text(text: str) -> AnalyticRuledSurface:
    fields = parse_surface_text(text)
    domain = fields["domain"]
    curves = {}
    for key in ("k", "q"):
        src, lineno, col = fields[key]
        try:
            curves[key] = CurveDef.from_source(src, domain)
        except ExprSyntaxError as e:
            raise SurfaceFileError(f"in {key!r}: {e}", lineno,
                                   col + e.offset) from e
    return AnalyticRuledSurface(curves["k"], curves["q"],
                                samples=fields.get("samples", DEFAULT_SAMPLES))


def load_surface(path: str) -> AnalyticRuledSurface:
    with open(path, "r", encoding="utf-8") as fh:
        return surface_from_text(fh.read())


# ---------------------------------------------------------------------------
# frame-grid export

def frame_table(surface, n: int) -> list:
    """Rows of (s, q, h, a, ds1_ds, kappa, drall) over a uniform grid."""
    s0, s1 = surface.domain
    svals = np.linspace(s0, s1, n)
    g = frame_grid(surface, svals)
    d = drall_grid(surface, svals)
    rows = []
    for i in range(n):
        rows.append({"s": float(svals[i]),
                     "q1": float(g["q"][i, 0]), "q2": float(g["q"][i, 1]),
                     "q3": float(g["q"][i, 2]),
                     "h1": float(g["h"][i, 0]), "h2": float(g["h"][i, 1]),
                     "h3": float(g["h"][i, 2]),
                     "a1": float(g["a"][i, 0]), "a2": float(g["a"][i, 1]),
                     "a3": float(g["a"][i, 2]),
                     "ds1_ds": float(g["ds1_ds"][i]),
                     "kappa": float(g["kappa"][i]),
                     "drall": float(d[i])})
    return rows


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def rows_to_json(rows, columns) -> str:
    return json.dumps([{c: row[c] for c in columns} for row in rows],
                      indent=2) + "\n"


def read_frame_csv(path: str) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != FRAME_COLUMNS:
            raise SurfaceFileError(f"unexpected frame columns {header}", 1, 1)
        return [{c: float(v) for c, v in zip(header, row)} for row in reader]


def _json_default(o):
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def theorem_report_json(reports, seed: int, suite_version: str) -> str:
    cases = [{"id": r.id, "verdict": r.verdict,
              "max_residual": r.max_residual, "argmax_s": r.argmax_s,
              "excluded_intervals": [list(iv) for iv in r.excluded_intervals],
              "params": r.params}
             for r in reports]
    return json.dumps({"suite_version": suite_version, "seed": seed,
                       "cases": cases}, indent=2, default=_json_default) + "\n"
