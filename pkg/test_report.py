from __future__ import annotations

import json

import openpyxl
import pytest

from magnus.algmap import GLMatrix
from magnus.errors import MagnusError
from magnus.export import write_matrix_xlsx, write_results_xlsx
from magnus.report import render_report_lines, render_report_md

RESULTS = {
    "config": {"rank": 3, "N": 5, "seed": 0, "trials": 2},
    "suites": [
        {"suite": "cocycle", "group": "johnson", "identity": "tau(phi psi) = ...", "trials": 2, "passed": 2, "failed": 0},
        {
            "suite": "surface",
            "group": "surface",
            "identity": "theta2(w0) = I",
            "trials": 2,
            "passed": 1,
            "failed": 1,
            "first_failure": {"identity": "theta2(w0) = I", "ok": False, "inputs": {"genus": 1}, "lhs": "0", "rhs": "1"},
        },
    ],
}


def test_report_lines():
    lines = render_report_lines(RESULTS)
    assert lines[0] == "# Verification report"
    assert "**1/2 suites passed** over 4 trials." in lines
    assert any(line.startswith("| surface | surface |") for line in lines)
    assert "### surface" in lines


def test_report_md_round_trip(tmp_path):
    src = tmp_path / "results.json"
    src.write_text(json.dumps(RESULTS), encoding="utf-8")
    out = tmp_path / "report" / "report.md"
    render_report_md(str(src), str(out))
    assert out.read_text(encoding="utf-8").startswith("# Verification report")


def test_report_rejects_bad_results(tmp_path):
    src = tmp_path / "results.json"
    src.write_text(json.dumps({"suites": "x"}), encoding="utf-8")
    with pytest.raises(MagnusError):
        render_report_md(str(src), str(tmp_path / "r.md"))


def test_results_workbook(tmp_path):
    out = tmp_path / "results.xlsx"
    write_results_xlsx(RESULTS, str(out))
    wb = openpyxl.load_workbook(out)
    ws = wb["Suites"]
    assert ws["A2"].value == "suite"
    assert ws["A3"].value == "cocycle"
    assert json.loads(ws["G4"].value)["identity"] == "theta2(w0) = I"
    assert wb["Config"]["A3"].value == "N"


def test_matrix_workbook(tmp_path):
    out = tmp_path / "m.xlsx"
    M = GLMatrix.from_rows([[0, -1], [1, 0]])
    write_matrix_xlsx(M, ["K[1,2]", "K[2,1]"], ["c1", "c2"], str(out), "test")
    ws = openpyxl.load_workbook(out)["Matrix"]
    assert ws["A1"].value == "test"
    assert ws["B3"].value == 0 and ws["C3"].value == -1
    assert ws["A6"].value == "det" and ws["B6"].value == 1
