"""CSV and JSON serialization of tables, distributions and run manifests.

Exact rationals are written as decimal numerator/denominator strings; the
``float_prob`` column is a convenience copy and is ignored when reading.
Every JSON document carries ``schema_version``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .dist import ExactDistribution
from .errors import ValidationError
from .simlab.empirical import EmpiricalDistribution

SCHEMA_VERSION = 1

DIST_COLUMNS = ("k", "numerator", "denominator", "float_prob")
SIM_COLUMNS = ("support", "count", "exact_freq_num", "exact_freq_den")


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def table_csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


EXACT_COLUMNS = {"numerator", "denominator", "exact_freq_num", "exact_freq_den"}


def _json_value(column, v):
    if column in EXACT_COLUMNS or isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int) and not isinstance(v, bool):
        # big integers stay exact as strings beyond the double range
        return v if abs(v) < 2**53 else str(v)
    return v


def table_json(kind, columns, rows, params=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "params": params or {},
        "columns": list(columns),
        "rows": [{c: _json_value(c, v) for c, v in zip(columns, row)} for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render(kind, columns, rows, fmt="csv", params=None):
    if fmt == "csv":
        return table_csv(columns, rows)
    if fmt == "json":
        return table_json(kind, columns, rows, params)
    raise ValidationError(f"unknown format {fmt!r}")


# --- exact distributions

def dist_rows(dist):
    return [(k, p.numerator, p.denominator, float(p)) for k, p in dist.items()]


def dist_to_text(dist, fmt="csv", params=None):
    return render("distribution", DIST_COLUMNS, dist_rows(dist), fmt, params)


def _rows_from_text(text, fmt):
    if fmt == "csv":
        return list(csv.DictReader(io.StringIO(text)))
    if fmt == "json":
        doc = json.loads(text)
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValidationError(f"unsupported schema version {doc.get('schema_version')!r}")
        return doc["rows"]
    raise ValidationError(f"unknown format {fmt!r}")


def dist_from_text(text, fmt="csv"):
    rows = _rows_from_text(text, fmt)
    return ExactDistribution([int(r["k"]) for r in rows],
                             [Fraction(int(r["numerator"]), int(r["denominator"])) for r in rows])


# --- empirical (simulation / enumeration) tables

def sim_to_text(emp, fmt="csv", params=None):
    return render("empirical", SIM_COLUMNS, emp.rows(), fmt, params)


def sim_from_text(text, fmt="csv"):
    rows = _rows_from_text(text, fmt)
    emp = EmpiricalDistribution({int(r["support"]): int(r["count"]) for r in rows})
    for r in rows:
        f = Fraction(int(r["exact_freq_num"]), int(r["exact_freq_den"]))
        if f != emp.freq(int(r["support"])):
            raise ValidationError(f"frequency column disagrees with counts at {r['support']}")
    return emp


# --- run manifest

def manifest(command, params, seed=None, budgets=None, wall_time=None, outputs=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": params,
        "seed": seed,
        "budgets": budgets or {},
        "wall_time_s": wall_time,
        "outputs": outputs or [],
    }


def manifest_to_json(doc):
    return json.dumps(doc, indent=2, default=str) + "\n"
