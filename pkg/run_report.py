# run_report.py
import argparse
from pathlib import Path

from magnus.export import write_results_xlsx
from magnus.jsonio import from_json
from magnus.report import render_report_md


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--results", required=True, help="results.json written by a verify run")
    ap.add_argument("--xlsx", action="store_true", help="also write results.xlsx next to it")
    args = ap.parse_args()

    inp = Path(args.results)
    out = inp.parent / "report.md"

    render_report_md(
        results_json=str(inp),
        out_md=str(out),
    )
    if args.xlsx:
        write_results_xlsx(from_json(inp), str(inp.parent / "results.xlsx"))


if __name__ == "__main__":
    main()
