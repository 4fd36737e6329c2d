"""Comparison reports: live recomputation of the published tables.

Every cell is recomputed from the library and diffed against the embedded
printed value.  Disagreements fall into two buckets: a mismatch (rounded
value differs from print) and an erratum (a mismatch no rounding slop can
explain).  For exact-count cells any disagreement is an erratum; for
estimator cells the printed last digit is granted one count of slop; for
correction values the printed 8th decimal is granted one unit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from . import reference
from .approx import (LEGENDRE_B, PUBLISHED_FIT, FitParams, conjecture_pi,
                     gauss_ratio, legendre, li, riemann_r_mobius)
from .correction import f_exact
from .counting import PiValue, prime_pi_fast, prime_pi_sieve
from .errors import DomainError

#: Estimator cells may sit one count off the print (last-digit rounding).
ESTIMATOR_SLOP = 1

#: Correction cells may sit one unit off in the printed 8th decimal.
CORRECTION_MATCH_TOL = 1e-8

SMALL_X_COLUMNS = ("exact", "conjecture", "riemann_r", "li", "gauss")
POWERS_COLUMNS = ("exact", "conjecture", "riemann_r", "li", "gauss", "legendre")

COLUMN_TITLES = {
    "exact": "Exact",
    "conjecture": "Fitted correction",
    "riemann_r": "R(x)",
    "li": "Li(x)",
    "gauss": "x/log x",
    "legendre": "Legendre",
}


def round_half_away_from_zero(value: float) -> int:
    """Displayed-integer rounding: halves move away from zero."""
    if value >= 0:
        return int(math.floor(value + 0.5))
    return -int(math.floor(-value + 0.5))


@dataclass(frozen=True)
class Cell:
    column: str
    value: float
    rounded: int
    printed: int
    match: bool


@dataclass(frozen=True)
class EstimatorRow:
    x: int
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class Erratum:
    table: str
    x: int
    column: str
    printed: float
    computed: float
    note: str


@dataclass(frozen=True)
class EstimatorReport:
    table: str
    columns: tuple[str, ...]
    rows: tuple[EstimatorRow, ...]
    errata: tuple[Erratum, ...]


@dataclass(frozen=True)
class CorrectionRow:
    exponent: int
    printed_f: float
    computed_f: float | None    # None when no exact count was supplied
    match: bool | None


@dataclass(frozen=True)
class CorrectionReport:
    rows: tuple[CorrectionRow, ...]
    errata: tuple[Erratum, ...]


def _estimator_errata(table: str, rows: tuple[EstimatorRow, ...]) -> tuple[Erratum, ...]:
    errata = []
    for row in rows:
        for cell in row.cells:
            diff = cell.rounded - cell.printed
            if cell.column == "exact":
                if diff != 0:
                    errata.append(Erratum(
                        table, row.x, cell.column, cell.printed, cell.value,
                        "printed exact count disagrees with the sieve"))
            elif abs(diff) > ESTIMATOR_SLOP:
                errata.append(Erratum(
                    table, row.x, cell.column, cell.printed, cell.value,
                    f"printed value not reproduced by the formula "
                    f"(off by {diff:+d} after rounding)"))
    return tuple(errata)


def _estimator_values(x: int, columns: tuple[str, ...], exact: int,
                      fit: FitParams) -> dict[str, float]:
    values = {
        "exact": float(exact),
        "conjecture": conjecture_pi(x, fit),
        "riemann_r": riemann_r_mobius(x),
        "li": li(x),
        "gauss": gauss_ratio(x),
    }
    if "legendre" in columns:
        values["legendre"] = legendre(x, LEGENDRE_B)
    return values


def _build_estimator_report(table: str, columns: tuple[str, ...],
                            printed_rows, pi_of: Callable[[int], int],
                            fit: FitParams) -> EstimatorReport:
    rows = []
    for printed in printed_rows:
        x = printed[0]
        printed_by_col = dict(zip(columns, printed[1:]))
        values = _estimator_values(x, columns, pi_of(x), fit)
        cells = []
        for col in columns:
            value = values[col]
            rounded = round_half_away_from_zero(value)
            cells.append(Cell(col, value, rounded, printed_by_col[col],
                              rounded == printed_by_col[col]))
        rows.append(EstimatorRow(x, tuple(cells)))
    rows = tuple(rows)
    return EstimatorReport(table, columns, rows, _estimator_errata(table, rows))


def build_small_x_report(pi_of: Callable[[int], int] | None = None,
                         fit: FitParams = PUBLISHED_FIT) -> EstimatorReport:
    """Recompute the x = 5..1000 comparison against its printed copy."""
    if pi_of is None:
        pi_of = lambda x: prime_pi_sieve(x).count
    return _build_estimator_report("small-x", SMALL_X_COLUMNS,
                                   reference.SMALL_X_TABLE, pi_of, fit)


def build_powers_report(pi_of: Callable[[int], int] | None = None,
                        fit: FitParams = PUBLISHED_FIT) -> EstimatorReport:
    """Recompute the x = 10..10**10 comparison against its printed copy."""
    if pi_of is None:
        pi_of = lambda x: prime_pi_fast(x).count
    printed_rows = [(10 ** r[0],) + r[1:] for r in reference.POWERS_TABLE]
    return _build_estimator_report("powers", POWERS_COLUMNS,
                                   printed_rows, pi_of, fit)


def build_correction_report(
        pi_by_exponent: Mapping[int, PiValue] | None = None) -> CorrectionReport:
    """Recompute correction values against the printed 22-row table.

    ``pi_by_exponent`` supplies exact counts for the exponents to check
    (default: 1..10 through the combinatorial counter); rows without a
    count are reported unchecked.
    """
    if pi_by_exponent is None:
        pi_by_exponent = {n: prime_pi_fast(10 ** n) for n in range(1, 11)}
    rows = []
    for exponent, printed_f in reference.CORRECTION_TABLE:
        pv = pi_by_exponent.get(exponent)
        if pv is None:
            rows.append(CorrectionRow(exponent, printed_f, None, None))
            continue
        computed = f_exact(10.0 ** exponent, pv.count)
        match = abs(computed - printed_f) <= CORRECTION_MATCH_TOL
        rows.append(CorrectionRow(exponent, printed_f, computed, match))
    rows = tuple(rows)
    return CorrectionReport(rows, _correction_errata(rows))


# ---------------------------------------------------------------------------
# rendering


def estimator_report_to_csv(report: EstimatorReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["table", "x"]
    for col in report.columns:
        header += [f"{col}_value", f"{col}_rounded", f"{col}_printed", f"{col}_match"]
    writer.writerow(header)
    for row in report.rows:
        record = [report.table, row.x]
        for cell in row.cells:
            record += [f"{cell.value:.17g}", cell.rounded, cell.printed,
                       "true" if cell.match else "false"]
        writer.writerow(record)
    return buf.getvalue()


def estimator_report_from_csv(text: str) -> EstimatorReport:
    """Inverse of :func:`estimator_report_to_csv`."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[0] != "table" or header[1] != "x":
        raise DomainError(f"unrecognized report header: {header}")
    columns = tuple(name[: -len("_value")] for name in header[2::4])
    table = None
    rows = []
    for record in reader:
        if not record:
            continue
        table = record[0]
        x = int(record[1])
        cells = []
        for i, col in enumerate(columns):
            value, rounded, printed, match = record[2 + 4 * i: 6 + 4 * i]
            cells.append(Cell(col, float(value), int(rounded), int(printed),
                              match == "true"))
        rows.append(EstimatorRow(x, tuple(cells)))
    if table is None:
        raise DomainError("report CSV carries no rows")
    rows = tuple(rows)
    return EstimatorReport(table, columns, rows, _estimator_errata(table, rows))


def estimator_report_to_json(report: EstimatorReport) -> str:
    payload = {
        "table": report.table,
        "columns": list(report.columns),
        "rows": [
            {
                "x": row.x,
                "cells": [
                    {"column": c.column, "value": c.value, "rounded": c.rounded,
                     "printed": c.printed, "match": c.match}
                    for c in row.cells
                ],
            }
            for row in report.rows
        ],
        "errata": [_erratum_payload(e) for e in report.errata],
    }
    return json.dumps(payload, indent=2)


def estimator_report_to_markdown(report: EstimatorReport) -> str:
    titles = [COLUMN_TITLES[c] for c in report.columns]
    lines = ["| x | " + " | ".join(titles) + " |",
             "|" + "---|" * (len(titles) + 1)]
    for row in report.rows:
        shown = []
        for cell in row.cells:
            mark = "" if cell.match else "*"
            shown.append(f"{cell.rounded}{mark}")
        lines.append(f"| {row.x} | " + " | ".join(shown) + " |")
    lines.append("")
    lines.append(_errata_markdown(report.errata))
    return "\n".join(lines)


def correction_report_to_csv(report: CorrectionReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["exponent", "printed_f", "computed_f", "match"])
    for row in report.rows:
        computed = "" if row.computed_f is None else f"{row.computed_f:.17g}"
        match = "" if row.match is None else ("true" if row.match else "false")
        writer.writerow([row.exponent, f"{row.printed_f:.8f}", computed, match])
    return buf.getvalue()


def correction_report_from_csv(text: str) -> CorrectionReport:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["exponent", "printed_f", "computed_f", "match"]:
        raise DomainError(f"unrecognized report header: {header}")
    rows = []
    errata = []
    for record in reader:
        if not record:
            continue
        exponent = int(record[0])
        printed_f = float(record[1])
        computed_f = float(record[2]) if record[2] else None
        match = None if record[3] == "" else record[3] == "true"
        rows.append(CorrectionRow(exponent, printed_f, computed_f, match))
    rows = tuple(rows)
    return CorrectionReport(rows, _correction_errata(rows))


def _correction_errata(rows: tuple[CorrectionRow, ...]) -> tuple[Erratum, ...]:
    errata = []
    for row in rows:
        if row.match is False and row.computed_f is not None:
            if abs(row.computed_f + row.printed_f) <= CORRECTION_MATCH_TOL:
                note = "defining expression is negative; printed with positive sign"
            else:
                note = "printed correction differs beyond its last decimal"
            errata.append(Erratum("correction", 10 ** row.exponent, "f",
                                  row.printed_f, row.computed_f, note))
    return tuple(errata)


def correction_report_to_json(report: CorrectionReport) -> str:
    payload = {
        "table": "correction",
        "rows": [
            {"exponent": r.exponent, "printed_f": r.printed_f,
             "computed_f": r.computed_f, "match": r.match}
            for r in report.rows
        ],
        "errata": [_erratum_payload(e) for e in report.errata],
    }
    return json.dumps(payload, indent=2)


def correction_report_to_markdown(report: CorrectionReport) -> str:
    lines = ["| 10^n | printed f | computed f | match |",
             "|---|---|---|---|"]
    for r in report.rows:
        computed = "-" if r.computed_f is None else f"{r.computed_f:.8f}"
        match = "-" if r.match is None else ("yes" if r.match else "NO")
        lines.append(f"| 10^{r.exponent} | {r.printed_f:.8f} | {computed} | {match} |")
    lines.append("")
    lines.append(_errata_markdown(report.errata))
    return "\n".join(lines)


def _erratum_payload(e: Erratum) -> dict:
    return {"table": e.table, "x": e.x, "column": e.column,
            "printed": e.printed, "computed": e.computed, "note": e.note}


def _errata_markdown(errata: tuple[Erratum, ...]) -> str:
    if not errata:
        return "No errata detected.\n"
    lines = ["Errata:"]
    for e in errata:
        lines.append(f"- x={e.x}, column {COLUMN_TITLES.get(e.column, e.column)}: "
                     f"printed {e.printed:.10g}, computed {e.computed:.10g} ({e.note})")
    lines.append("")
    return "\n".join(lines)
