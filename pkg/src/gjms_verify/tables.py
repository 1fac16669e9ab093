"""Deterministic tables of coefficients, Q-values, operators and series."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .compositions import coefficient_table
from .exact import MultiPoly
from .mcal import m_operator
from .qcurv import g_series, lambda_defect, volume_v
from .spaces import get_space, gjms_poly, q_value_poly

TABLE_KINDS = ("m_coeff", "q_values", "operators", "series", "defects")
FORMATS = ("json", "csv", "text")
SERIES_NAMES = ("v", "w", "g")


class TableError(ValueError):
    pass


@dataclass
class Table:
    kind: str
    params: dict
    columns: tuple[str, ...]
    rows: list[tuple]


def _m_coeff(params: dict) -> Table:
    n = params["N"]
    rows = [(str(c), v) for c, v in coefficient_table(n).coefficients]
    return Table("m_coeff", {"N": n}, ("composition", "coefficient"), rows)


def _q_values(params: dict) -> Table:
    space = get_space(params["space"])
    rows = [(n, q_value_poly(space, n)) for n in range(1, params["N"] + 1)]
    return Table("q_values", {"space": space.tag, "N_max": params["N"]}, ("N", "Q"), rows)


def _operators(params: dict) -> Table:
    space = get_space(params["space"])
    rows = [(n, gjms_poly(space, n), m_operator(space, n)) for n in range(1, params["N"] + 1)]
    return Table("operators", {"space": space.tag, "N_max": params["N"]}, ("N", "P", "M"), rows)


def _defects(params: dict) -> Table:
    space = get_space(params["space"])
    rows = []
    for n in range(1, params["N"] + 1):
        d = lambda_defect(space, n)
        rows.append((n, d.q_primary, d.value))
    return Table("defects", {"space": space.tag, "N_max": params["N"]},
                 ("N", "Q_primary", "Lambda"), rows)


def _series(params: dict) -> Table:
    space = get_space(params["space"])
    name, order = params.get("series", "g"), params["K"]
    if name not in SERIES_NAMES:
        raise TableError(f"unknown series {name!r}; choose from {', '.join(SERIES_NAMES)}")
    if name == "g":
        series = g_series(space, order)
    else:
        series = volume_v(space, order)
        if name == "w":
            series = series.sqrt()
    rows = [(k, c) for k, c in enumerate(series.coeffs)]
    return Table("series", {"space": space.tag, "series": name, "K": order, "variable": series.var},
                 ("power", "coefficient"), rows)


BUILDERS = {
    "m_coeff": _m_coeff,
    "q_values": _q_values,
    "operators": _operators,
    "series": _series,
    "defects": _defects,
}


def build_table(kind: str, params: dict) -> Table:
    if kind not in BUILDERS:
        raise TableError(f"unknown table kind {kind!r}")
    try:
        return BUILDERS[kind](params)
    except ValueError as exc:
        raise TableError(str(exc)) from exc


def _cell_json(value):
    if isinstance(value, MultiPoly):
        return {"poly": str(value), "terms": value.term_map()}
    if isinstance(value, int):
        return value
    return str(value)


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "schema": 1,
            "kind": table.kind,
            "params": table.params,
            "columns": list(table.columns),
            "rows": [[_cell_json(v) for v in row] for row in table.rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([str(v) for v in row])
        return buf.getvalue()
    if fmt == "text":
        header = " ".join(f"{k}={v}" for k, v in table.params.items())
        lines = [f"# {table.kind} {header}".rstrip()]
        for row in table.rows:
            lines.append(" | ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"
    raise TableError(f"unknown format {fmt!r}")


def emit_table(kind: str, params: dict, fmt: str = "text") -> str:
    return render(build_table(kind, params), fmt)
