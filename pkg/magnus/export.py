# magnus/export.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import openpyxl
from openpyxl.styles import Alignment, Font
from openpyxl.utils import get_column_letter

from magnus.algmap import GLMatrix
from magnus.util import log

HEADERS = ["suite", "group", "identity", "trials", "passed", "failed", "first_failure"]


def _title_and_headers(ws, title: str, headers: list[str]) -> None:
    # Row 1: title (merged)
    ws["A1"] = title
    ws["A1"].font = Font(bold=True, size=14)
    ws["A1"].alignment = Alignment(horizontal="left", vertical="center")
    ws.merge_cells(start_row=1, start_column=1, end_row=1, end_column=max(len(headers), 1))

    # Row 2: headers
    for i, h in enumerate(headers, start=1):
        c = ws.cell(row=2, column=i, value=h)
        c.font = Font(bold=True)
        c.alignment = Alignment(horizontal="left", vertical="top", wrap_text=True)


def write_results_xlsx(results: dict[str, Any], out_xlsx: str, title: str = "Verification results") -> None:
    """One row per suite; the first counterexample is stored as a JSON string."""
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "Suites"
    _title_and_headers(ws, title, HEADERS)

    r = 3
    for s in results.get("suites", []):
        ws.cell(r, 1, s.get("suite", ""))
        ws.cell(r, 2, s.get("group", ""))
        ws.cell(r, 3, s.get("identity", ""))
        ws.cell(r, 4, s.get("trials", 0))
        ws.cell(r, 5, s.get("passed", 0))
        ws.cell(r, 6, s.get("failed", 0))
        failure = s.get("first_failure")
        ws.cell(r, 7, json.dumps(failure, sort_keys=True) if failure else "")
        r += 1

    widths = [18, 12, 60, 8, 8, 8, 90]
    for i, w in enumerate(widths, start=1):
        ws.column_dimensions[get_column_letter(i)].width = w

    for row in ws.iter_rows(min_row=3, max_row=ws.max_row, min_col=1, max_col=len(HEADERS)):
        for cell in row:
            cell.alignment = Alignment(wrap_text=True, vertical="top")

    cfg = wb.create_sheet("Config")
    _title_and_headers(cfg, "Run configuration", ["key", "value"])
    for k, (key, value) in enumerate(sorted((results.get("config") or {}).items()), start=3):
        cfg.cell(k, 1, key)
        cfg.cell(k, 2, "" if value is None else str(value))

    ws.freeze_panes = "A3"
    Path(out_xlsx).parent.mkdir(parents=True, exist_ok=True)
    wb.save(out_xlsx)
    log(f"Wrote {out_xlsx}")


def write_matrix_xlsx(M: GLMatrix, row_labels: list[str], col_labels: list[str], out_xlsx: str, title: str) -> None:
    """Integer matrix with labelled rows and columns, plus its determinant below."""
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "Matrix"
    _title_and_headers(ws, title, [""] + col_labels)

    for r, (label, row) in enumerate(zip(row_labels, M.rows), start=3):
        ws.cell(r, 1, label).font = Font(bold=True)
        for c, x in enumerate(row, start=2):
            ws.cell(r, c, x if type(x) is int else str(x))

    last = 3 + M.n
    ws.cell(last + 1, 1, "det").font = Font(bold=True)
    det = M.det
    ws.cell(last + 1, 2, det if type(det) is int else str(det))

    ws.column_dimensions["A"].width = 14
    for c in range(2, len(col_labels) + 2):
        ws.column_dimensions[get_column_letter(c)].width = 16

    ws.freeze_panes = "B3"
    Path(out_xlsx).parent.mkdir(parents=True, exist_ok=True)
    wb.save(out_xlsx)
    log(f"Wrote {out_xlsx}")
