# magnus/report.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from magnus.errors import MagnusError
from magnus.jsonio import validate_results
from magnus.util import log


def _md_escape(s: str) -> str:
    return (s or "").replace("\n", " ").replace("|", "\\|").strip()


def _side(x: Any) -> str:
    return json.dumps(x, sort_keys=True)


def render_report_lines(d: dict[str, Any]) -> list[str]:
    suites = d.get("suites") or []
    total = sum(s.get("trials", 0) for s in suites)
    failed = [s for s in suites if s.get("failed")]

    lines = []
    lines.append("# Verification report")
    lines.append("")
    cfg = d.get("config") or {}
    for key in sorted(cfg):
        if cfg[key] is not None:
            lines.append(f"- {key}: `{cfg[key]}`")
    lines.append("")
    lines.append(f"**{len(suites) - len(failed)}/{len(suites)} suites passed** over {total} trials.")
    lines.append("")

    lines.append("## Suites")
    lines.append("")
    lines.append("| suite | group | identity | trials | passed | failed |")
    lines.append("|---|---|---|---|---|---|")
    for s in suites:
        lines.append(
            f"| {s.get('suite','')} | {s.get('group','')} | {_md_escape(s.get('identity',''))} "
            f"| {s.get('trials',0)} | {s.get('passed',0)} | {s.get('failed',0)} |"
        )
    lines.append("")

    if failed:
        lines.append("## First counterexamples")
        lines.append("")
        for s in failed:
            f = s.get("first_failure") or {}
            lines.append(f"### {s.get('suite','')}")
            lines.append("")
            lines.append(f"- Identity: {_md_escape(f.get('identity',''))}")
            for k, v in sorted((f.get("inputs") or {}).items()):
                lines.append(f"- {k}: `{_md_escape(_side(v))}`")
            lines.append("")
            lines.append("```json")
            lines.append(json.dumps({"lhs": f.get("lhs"), "rhs": f.get("rhs")}, sort_keys=True, indent=2))
            lines.append("```")
            lines.append("")
    return lines


def render_report_md(results_json: str = "out/results.json", out_md: str = "out/report.md") -> None:
    d = json.loads(Path(results_json).read_text(encoding="utf-8"))
    ok, errs = validate_results(d)
    if not ok:
        raise MagnusError("Invalid results file:\n- " + "\n- ".join(errs))

    lines = render_report_lines(d)
    Path(out_md).parent.mkdir(parents=True, exist_ok=True)
    Path(out_md).write_text("\n".join(lines).strip() + "\n", encoding="utf-8")
    log(f"Wrote {out_md}")
