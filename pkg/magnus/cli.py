# magnus/cli.py
"""
magnus <command> ...

Exit codes: 0 success or all checks pass, 1 an identity failed (the first failing
check is printed as JSON), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from magnus import ia_abel, lcs, stasheff, surface
from magnus.autfn import LIBRARY_KINDS, FreeGroupEndo, generator_library
from magnus.check import Check
from magnus.config import load_config
from magnus.errors import MagnusError, PreconditionError
from magnus.expansion import MagnusExpansion, evaluate, standard_expansion
from magnus.freegroup import parse_word
from magnus.johnson import johnson_coordinates, johnson_p, johnson_series
from magnus.jsonio import dumps, endo_from_json, expansion_from_json, from_json, to_json
from magnus.report import render_report_md
from magnus.tensor import render_terms
from magnus.util import catalan, log

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


# -----------------------------
# Input helpers
# -----------------------------


def _infer_rank(text: str) -> int:
    found = [int(x) for x in re.findall(r"x(\d+)", text)]
    return max(found, default=1)


def _load_theta(source: str, rank: Optional[int], N: int) -> MagnusExpansion:
    if source == "std":
        if rank is None:
            raise PreconditionError("--rank is required with --theta std")
        return standard_expansion(rank, N)
    theta = expansion_from_json(from_json(source))
    if rank is not None and rank != theta.rank:
        raise PreconditionError(f"--rank {rank} disagrees with the expansion file (rank {theta.rank})")
    if N > theta.N:
        raise PreconditionError(f"--N {N} exceeds the truncation of {source} ({theta.N})")
    return theta.truncated(N)


def _load_aut(source: str, n: Optional[int]) -> FreeGroupEndo:
    """A JSON file, or an IA word such as "K[1,2]*K[1,2,3]^-1" (needs --rank)."""
    if Path(source).is_file():
        return endo_from_json(from_json(source))
    if n is None:
        raise PreconditionError("--rank is required when --aut is an IA word")
    return ia_abel.ia_word_endo(source, n)


def _emit(obj: Any, text: Optional[str], as_text: bool) -> None:
    print(text if as_text and text is not None else dumps(obj))


# -----------------------------
# Commands
# -----------------------------


def cmd_expand(args) -> int:
    rank = args.rank or (None if args.theta != "std" else _infer_rank(args.word))
    theta = _load_theta(args.theta, rank, args.N)
    w = parse_word(args.word, theta.rank)
    value = evaluate(theta, w)
    if args.m is not None:
        t = value.component(args.m)
        _emit(t, render_terms(t.terms), args.text)
    else:
        _emit(value, render_terms(value.terms), args.text)
    return EXIT_OK


def cmd_johnson(args) -> int:
    phi = _load_aut(args.aut, args.rank)
    theta = _load_theta(args.theta, args.rank or phi.rank, args.N)
    if args.p is not None:
        u = johnson_p(theta, phi, args.p)
        text = "\n".join(f"X{i} -> {render_terms(img.terms)}" for i, img in enumerate(u.images, start=1))
        _emit(u, text, args.text)
    else:
        text = "\n".join(
            f"X{i} -> {render_terms(johnson_series(theta, phi, i).terms)}" for i in range(1, theta.rank + 1)
        )
        _emit(johnson_coordinates(theta, phi), text, args.text)
    return EXIT_OK


def cmd_johnson_hom(args) -> int:
    phi = _load_aut(args.aut, args.rank)
    N = max(args.N, args.m + 1)
    theta = _load_theta(args.theta, args.rank or phi.rank, N)
    u = lcs.johnson_hom(theta, phi, args.m)
    text = "\n".join(f"X{i} -> {render_terms(img.terms)}" for i, img in enumerate(u.images, start=1))
    _emit(u, text, args.text)
    return EXIT_OK


def cmd_lcs(args) -> int:
    rank = args.rank or (None if args.theta != "std" else _infer_rank(args.word))
    theta = _load_theta(args.theta, rank, args.N)
    w = parse_word(args.word, theta.rank)
    depth = lcs.lcs_degree(theta, w)
    out: dict[str, Any] = {"word": args.word, "depth": depth}
    if isinstance(depth, int):
        out["graded_image"] = lcs.graded_image(theta, w, depth).tensor
    _emit(out, f"depth {depth}", args.text)
    return EXIT_OK


def cmd_ia_abel(args) -> int:
    n = args.n
    if args.matrix:
        M = ia_abel.tau1_matrix(n)
        rows = [phi.label for phi in generator_library("magnus-K", n)]
        cols = [ia_abel.basis_label(b) for b in ia_abel.basis(n)]
        if args.xlsx:
            from magnus.export import write_matrix_xlsx

            write_matrix_xlsx(M, rows, cols, args.xlsx, f"tau1 generator matrix, n = {n}")
        out = {
            "rank": n,
            "rows": rows,
            "columns": cols,
            "matrix": M,
            "det": M.det,
            "signed_permutation": ia_abel.is_signed_permutation(M),
        }
        _emit(out, None, False)
        return EXIT_OK
    if args.word is None:
        raise _UsageError("ia-abel needs --word or --matrix")
    coords = ia_abel.abelianize_ia_word(args.word, n)
    check = ia_abel.check_ia_word(args.word, n)
    if not check.ok:
        print(dumps(check))
        return EXIT_FAILED
    _emit(coords, dumps(coords.support()), args.text)
    return EXIT_OK


def cmd_surface(args) -> int:
    ctx = surface.SurfaceContext.from_genus(args.g)
    theta = _load_theta(args.theta, ctx.rank, max(args.N, 3))
    wanted = {args.check} if args.check != "all" else {"theta2", "nu0", "tau2", "torus", "duality"}
    checks: list[Check] = []
    if "theta2" in wanted:
        checks.append(surface.theta2_w0_check(ctx, theta))
    if "nu0" in wanted:
        delta = parse_word(args.word, ctx.rank) if args.word else ctx.boundary
        value = surface.nu0(ctx, delta, theta)
        if args.word:
            checks.append(Check("nu0", True, lhs=value, inputs={"word": delta}))
        else:
            checks.append(Check("nu0(w0) = -1", value == -1, lhs=value, rhs=-1))
    if "tau2" in wanted:
        checks.append(surface.tau2_boundary_check(ctx, theta))
    if "torus" in wanted:
        value = surface.torus_pairing()
        checks.append(Check("torus pairing = 1", value == 1, lhs=value, rhs=1))
    if "duality" in wanted:
        checks.append(surface.check_duality(ctx))
    failed = [c for c in checks if not c.ok]
    if failed:
        print(dumps(failed[0]))
        return EXIT_FAILED
    print(dumps({"genus": ctx.genus, "boundary_word": str(ctx.boundary), "checks": checks}))
    return EXIT_OK


def cmd_stasheff(args) -> int:
    words = stasheff.vertices(args.p)
    if args.count:
        print(len(words))
        return EXIT_OK
    if args.list:
        for w in words:
            print(f"{'+' if stasheff.sgn(w) > 0 else '-'} {stasheff.render(w)}")
        return EXIT_OK
    print(dumps({"p": args.p, "count": len(words), "catalan": catalan(args.p)}))
    return EXIT_OK


def cmd_aut(args) -> int:
    endos = generator_library(args.list, args.n)
    if args.text:
        for phi in endos:
            print(f"{phi.label}: " + ", ".join(f"x{i} -> {w or '1'}" for i, w in enumerate(phi.images, start=1)))
    else:
        print(dumps(endos))
    return EXIT_OK


def cmd_verify(args) -> int:
    from magnus.export import write_results_xlsx
    from magnus.suites import results_document, run_suites, select_suites

    cfg = load_config(
        rank=args.rank,
        genus=args.g,
        N=args.N,
        trials=args.trials,
        seed=args.seed,
        max_word_length=args.max_word_length,
        workers=args.workers,
        quiet=args.quiet or None,
        suite=args.group,
        identity=args.identity,
        output=args.out,
    )
    if cfg.quiet:
        os.environ["MAGNUS_QUIET"] = "1"
    suites = select_suites(args.group, args.identity)
    log(f"verify {args.group}: {len(suites)} suite(s), {cfg.trials} trials each, seed {cfg.seed}")
    results = run_suites(suites, cfg)
    doc = results_document(cfg, results)

    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        to_json(doc, args.out)
        log(f"Wrote {args.out}")
        if args.md:
            render_report_md(args.out, args.md)
    if args.xlsx:
        write_results_xlsx(doc, args.xlsx)

    failed = [r for r in results if not r.ok]
    if failed:
        print(dumps(failed[0].first_failure))
        return EXIT_FAILED
    print(dumps(doc))
    return EXIT_OK


# -----------------------------
# Parser
# -----------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="magnus", description="Magnus expansions and Johnson maps, exactly.")
    ap.add_argument("--quiet", action="store_true", help="no progress output on stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p, theta: bool = True, N: int | None = 5):
        p.add_argument("--rank", "-n", dest="rank", type=int, default=None)
        if N is not None:
            p.add_argument("--N", type=int, default=N)
        if theta:
            p.add_argument("--theta", default="std", help="std or an expansion JSON file")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="text", action="store_false")
        fmt.add_argument("--text", dest="text", action="store_true")
        p.set_defaults(text=False)

    p = sub.add_parser("expand", help="evaluate theta on a word")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--m", type=int, default=None, help="only the degree-m component")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("johnson", help="tau^theta_p(phi), or all IA coordinates of tau(phi)")
    common(p)
    p.add_argument("--aut", required=True, help="endo JSON file or IA word")
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_johnson)

    p = sub.add_parser("johnson-hom", help="tau_m(phi) for phi in A(m)")
    common(p)
    p.add_argument("--aut", required=True, help="endo JSON file or IA word")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_johnson_hom)

    p = sub.add_parser("lcs", help="lower central series depth and graded image")
    common(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("ia-abel", help="IA_n abelianization coordinates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", default=None)
    p.add_argument("--matrix", action="store_true")
    p.add_argument("--xlsx", default=None, help="also write the matrix to this workbook")
    p.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_ia_abel)

    p = sub.add_parser("surface", help="genus-g boundary word identities")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--theta", default="std")
    p.add_argument("--check", choices=("all", "theta2", "nu0", "tau2", "torus", "duality"), default="all")
    p.add_argument("--word", default=None, help="evaluate nu0 on this word instead of w0")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("stasheff", help="parenthesizations of p+1 letters")
    p.add_argument("--p", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_stasheff)

    p = sub.add_parser("aut", help="generator libraries of Aut(F_n)")
    p.add_argument("--list", choices=LIBRARY_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("group", help="all, a group name or a suite name")
    p.add_argument("--identity", default=None, help="one suite within the group")
    p.add_argument("--rank", "-n", dest="rank", type=int, default=None)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-word-length", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="results JSON path")
    p.add_argument("--md", default=None, help="Markdown report path (needs --out)")
    p.add_argument("--xlsx", default=None, help="results workbook path")
    p.set_defaults(func=cmd_verify)

    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    if args.quiet:
        os.environ["MAGNUS_QUIET"] = "1"
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"magnus: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MagnusError as e:
        print(f"magnus: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    try:
        sys.stdout.reconfigure(line_buffering=True)
    except Exception:
        pass
    sys.exit(run())


if __name__ == "__main__":
    main()
