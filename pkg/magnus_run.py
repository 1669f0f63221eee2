#!/usr/bin/env python3
"""
one-shot verification run

Usage:
  python magnus_run.py --rank 3 --N 5
  python magnus_run.py --rank 4 --genus 2 --trials 50 --seed 7

What it does (end-to-end):
  1) tau1 generator matrix -> data/<slug>/ia_abel/{tau1_matrix.json,tau1_matrix.xlsx}
  2) surface identities -> data/<slug>/surface/checks.json
  3) all suites -> data/<slug>/verify/results.json
  4) report -> data/<slug>/verify/{report.md,results.xlsx}

Exits 1 when any identity failed, after still writing every output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from magnus import surface
from magnus.autfn import magnus_generators
from magnus.config import load_config
from magnus.expansion import standard_expansion
from magnus.export import write_matrix_xlsx, write_results_xlsx
from magnus.ia_abel import basis, basis_label, check_generator_matrix, tau1_matrix
from magnus.jsonio import to_json
from magnus.report import render_report_md
from magnus.suites import SUITES, results_document, run_suites
from magnus.util import slugify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank", type=int, default=None)
    ap.add_argument("--genus", type=int, default=None)
    ap.add_argument("--N", type=int, default=None)
    ap.add_argument("--trials", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--base", default="data", help="base output directory")
    args = ap.parse_args()

    cfg = load_config(
        rank=args.rank, genus=args.genus, N=args.N, trials=args.trials, seed=args.seed, workers=args.workers
    )
    slug = slugify(f"n{cfg.rank} g{cfg.genus} N{cfg.N} seed{cfg.seed}")

    base = Path(args.base) / slug
    abel_dir = base / "ia_abel"
    surface_dir = base / "surface"
    verify_dir = base / "verify"

    for d in [abel_dir, surface_dir, verify_dir]:
        d.mkdir(parents=True, exist_ok=True)

    print(f"\n=== MAGNUS RUN ===")
    print(f"Rank   : {cfg.rank}")
    print(f"Genus  : {cfg.genus}")
    print(f"N      : {cfg.N}")
    print(f"Trials : {cfg.trials} (seed {cfg.seed})")
    print(f"Out    : {base}\n")

    ok = True

    # 1) GENERATOR MATRIX
    print("1) tau1 generator matrix...")
    M = tau1_matrix(cfg.rank)
    rows = [phi.label for phi in magnus_generators(cfg.rank)]
    cols = [basis_label(b) for b in basis(cfg.rank)]
    check = check_generator_matrix(cfg.rank)
    to_json({"rows": rows, "columns": cols, "matrix": M, "det": M.det, "check": check}, abel_dir / "tau1_matrix.json")
    write_matrix_xlsx(M, rows, cols, str(abel_dir / "tau1_matrix.xlsx"), f"tau1 generator matrix, n = {cfg.rank}")
    print(f"   done: {M.n}x{M.n}, det={M.det}, ok={check.ok}")
    ok &= check.ok

    # 2) SURFACE
    print("2) Surface identities...")
    ctx = surface.SurfaceContext.from_genus(cfg.genus)
    theta = standard_expansion(ctx.rank, 3)
    checks = [
        surface.theta2_w0_check(ctx, theta),
        surface.tau2_boundary_check(ctx, theta),
        surface.check_duality(ctx),
    ]
    to_json({"genus": ctx.genus, "boundary_word": str(ctx.boundary), "checks": checks}, surface_dir / "checks.json")
    failed = [c.identity for c in checks if not c.ok]
    print(f"   done: {len(checks) - len(failed)}/{len(checks)} passed")
    ok &= not failed

    # 3) SUITES
    print("3) Verification suites...")
    results = run_suites(list(SUITES), cfg)
    results_json = verify_dir / "results.json"
    doc = results_document(cfg, results)
    to_json(doc, results_json)
    failed = [r.suite for r in results if not r.ok]
    print(f"   done: {len(results) - len(failed)}/{len(results)} suites passed")
    if failed:
        print(f"   failing: {', '.join(failed)}")
    ok &= not failed

    # 4) REPORT
    print("4) Report...")
    render_report_md(results_json=str(results_json), out_md=str(verify_dir / "report.md"))
    write_results_xlsx(doc, str(verify_dir / "results.xlsx"))

    print("\nDone.")
    print(f"Outputs in: {base}")
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
