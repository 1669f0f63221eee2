# run_verify.py
import argparse
from pathlib import Path

from magnus.config import load_config
from magnus.jsonio import to_json
from magnus.suites import results_document, run_suites, select_suites
from magnus.util import slugify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", default="all", help="all, a group name or a suite name")
    ap.add_argument("--rank", type=int, default=None)
    ap.add_argument("--N", type=int, default=None)
    ap.add_argument("--trials", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--base", default="data")
    args = ap.parse_args()

    cfg = load_config(rank=args.rank, N=args.N, trials=args.trials, seed=args.seed, suite=args.group)
    slug = slugify(f"verify {args.group} n{cfg.rank} N{cfg.N} seed{cfg.seed}")

    out = Path(args.base) / slug / "results.json"
    out.parent.mkdir(parents=True, exist_ok=True)

    results = run_suites(select_suites(args.group), cfg)
    to_json(results_document(cfg, results), out)
    print(f"Wrote {out}")


if __name__ == "__main__":
    main()
