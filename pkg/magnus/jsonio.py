# magnus/jsonio.py
"""
JSON forms of every domain type.

Scalars are written as strings ("3", "-1/2") so that no float ever appears;
tensor keys are comma-separated 1-based indices, "" for degree 0.
"""
from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from magnus.algmap import AlgebraMap, GLMatrix, IACoordinates
from magnus.autfn import FreeGroupEndo
from magnus.check import Check
from magnus.cochain import SemidirectElement
from magnus.errors import MagnusError, ShapeMismatch
from magnus.expansion import MagnusExpansion, make_expansion, standard_expansion
from magnus.freegroup import Word, make_word, parse_word, render_word
from magnus.ia_abel import AbelCoordinates, basis, basis_label
from magnus.stasheff import ParenWord, render
from magnus.tensor import HomTensor, Tensor, TruncatedSeries, render_scalar, scalar

# -----------------------------
# Encoders
# -----------------------------


def _key(k: tuple[int, ...]) -> str:
    return ",".join(str(i) for i in k)


def _unkey(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(",")) if s else ()


def tensor_to_json(t: Tensor) -> dict[str, Any]:
    return {"rank": t.rank, "degree": t.degree, "terms": {_key(k): render_scalar(v) for k, v in sorted(t.terms.items())}}


def series_to_json(s: TruncatedSeries) -> dict[str, Any]:
    return {"rank": s.rank, "N": s.N, "components": [tensor_to_json(t) for t in s.components]}


def hom_to_json(u: HomTensor) -> dict[str, Any]:
    return {"rank": u.rank, "degree": u.degree, "images": [tensor_to_json(t) for t in u.images]}


def word_to_json(w: Word) -> dict[str, Any]:
    return {"rank": w.rank, "letters": [[i, s] for i, s in w.letters]}


def endo_to_json(phi: FreeGroupEndo) -> dict[str, Any]:
    d: dict[str, Any] = {"rank": phi.rank, "images": [render_word(w) for w in phi.images]}
    if phi.inverse is not None:
        d["inverse"] = [render_word(w) for w in phi.inverse]
    if phi.label:
        d["label"] = phi.label
    return d


def expansion_to_json(theta: MagnusExpansion) -> dict[str, Any]:
    xi = [] if theta.is_standard else [series_to_json(s) for s in theta.xi]
    return {"rank": theta.rank, "N": theta.N, "xi": xi}


def algmap_to_json(U: AlgebraMap) -> dict[str, Any]:
    return {"rank": U.rank, "N": U.N, "images": [series_to_json(s) for s in U.images]}


def ia_to_json(c: IACoordinates) -> dict[str, Any]:
    return {
        "rank": c.rank,
        "N": c.N,
        "u": {str(p): [tensor_to_json(t) for t in hom.images] for p, hom in sorted(c.u.items())},
    }


def matrix_to_json(A: GLMatrix) -> dict[str, Any]:
    return {"rows": [[render_scalar(x) for x in r] for r in A.rows]}


def abel_to_json(c: AbelCoordinates) -> dict[str, Any]:
    return {
        "rank": c.rank,
        "basis": [basis_label(b) for b in basis(c.rank)],
        "values": [render_scalar(x) for x in c.values],
    }


def check_to_json(c: Check) -> dict[str, Any]:
    return {
        "identity": c.identity,
        "ok": c.ok,
        "inputs": {k: to_jsonable(v) for k, v in sorted(c.inputs.items())},
        "lhs": to_jsonable(c.lhs),
        "rhs": to_jsonable(c.rhs),
    }


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return render_scalar(obj) if isinstance(obj, Fraction) else obj
    if isinstance(obj, Tensor):
        return tensor_to_json(obj)
    if isinstance(obj, TruncatedSeries):
        return series_to_json(obj)
    if isinstance(obj, HomTensor):
        return hom_to_json(obj)
    if isinstance(obj, Word):
        return word_to_json(obj)
    if isinstance(obj, FreeGroupEndo):
        return endo_to_json(obj)
    if isinstance(obj, SemidirectElement):
        return {"word": word_to_json(obj.word), "endo": endo_to_json(obj.endo)}
    if isinstance(obj, MagnusExpansion):
        return expansion_to_json(obj)
    if isinstance(obj, AlgebraMap):
        return algmap_to_json(obj)
    if isinstance(obj, IACoordinates):
        return ia_to_json(obj)
    if isinstance(obj, GLMatrix):
        return matrix_to_json(obj)
    if isinstance(obj, AbelCoordinates):
        return abel_to_json(obj)
    if isinstance(obj, ParenWord):
        return render(obj)
    if isinstance(obj, Check):
        return check_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def to_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def from_json(path: str | Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


# -----------------------------
# Decoders
# -----------------------------


def _require(d: dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise MagnusError(f"JSON object is missing {', '.join(missing)}")


def tensor_from_json(d: dict[str, Any]) -> Tensor:
    _require(d, "rank", "degree", "terms")
    return Tensor.from_terms(int(d["rank"]), int(d["degree"]), {_unkey(k): scalar(v) for k, v in d["terms"].items()})


def series_from_json(d: dict[str, Any] | list[Any]) -> TruncatedSeries:
    """
    Accepts the written envelope {"rank", "N", "components": [tensor, ...]} and the bare
    form [tensor_0, ..., tensor_k, {"N": N}].
    """
    if isinstance(d, list):
        if not d or not isinstance(d[-1], dict) or set(d[-1]) != {"N"}:
            raise MagnusError("series array must end with {\"N\": N}")
        if len(d) < 2 or not isinstance(d[0], dict) or "rank" not in d[0]:
            raise MagnusError("series array needs at least the degree-0 tensor")
        d = {"rank": d[0]["rank"], "N": d[-1]["N"], "components": d[:-1]}
    _require(d, "rank", "N", "components")
    rank, N = int(d["rank"]), int(d["N"])
    comps = [tensor_from_json(c) for c in d["components"]]
    for m, t in enumerate(comps):
        if t.degree != m:
            raise ShapeMismatch(f"component {m} has degree {t.degree}")
    return TruncatedSeries.from_components(rank, N, comps)


def hom_from_json(d: dict[str, Any]) -> HomTensor:
    _require(d, "rank", "degree", "images")
    return HomTensor(int(d["rank"]), int(d["degree"]), tuple(tensor_from_json(t) for t in d["images"]))


def word_from_json(d: dict[str, Any]) -> Word:
    _require(d, "rank", "letters")
    return make_word(int(d["rank"]), d["letters"])


def endo_from_json(d: dict[str, Any]) -> FreeGroupEndo:
    _require(d, "rank", "images")
    rank = int(d["rank"])
    images = tuple(parse_word(s, rank) for s in d["images"])
    inverse = tuple(parse_word(s, rank) for s in d["inverse"]) if d.get("inverse") is not None else None
    return FreeGroupEndo(rank, images, inverse, d.get("label", ""))


def expansion_from_json(d: dict[str, Any]) -> MagnusExpansion:
    _require(d, "rank", "N", "xi")
    rank, N = int(d["rank"]), int(d["N"])
    if not d["xi"]:
        return standard_expansion(rank, N)
    theta = make_expansion([series_from_json(s) for s in d["xi"]])
    if theta.rank != rank or theta.N != N:
        raise ShapeMismatch(f"xi series have rank {theta.rank}, N {theta.N}; header says {rank}, {N}")
    return theta


def algmap_from_json(d: dict[str, Any]) -> AlgebraMap:
    _require(d, "rank", "N", "images")
    return AlgebraMap(int(d["rank"]), int(d["N"]), tuple(series_from_json(s) for s in d["images"]))


def ia_from_json(d: dict[str, Any]) -> IACoordinates:
    _require(d, "rank", "N", "u")
    rank = int(d["rank"])
    u = {}
    for p, images in d["u"].items():
        u[int(p)] = HomTensor(rank, int(p) + 1, tuple(tensor_from_json(t) for t in images))
    return IACoordinates(rank, int(d["N"]), u)


def matrix_from_json(d: dict[str, Any]) -> GLMatrix:
    _require(d, "rows")
    return GLMatrix.from_rows(d["rows"])


# -----------------------------
# Results files
# -----------------------------


def validate_results(d: dict[str, Any]) -> tuple[bool, list[str]]:
    """Returns (ok, errors) for a suite results document."""
    errors: list[str] = []
    if not isinstance(d.get("config"), dict):
        errors.append("config: expected an object")
    suites = d.get("suites")
    if not isinstance(suites, list):
        errors.append("suites: expected a list")
        return False, errors
    for k, s in enumerate(suites):
        for key in ("suite", "identity", "trials", "passed", "failed"):
            if key not in s:
                errors.append(f"suites[{k}]: missing {key}")
        if s.get("failed") and not s.get("first_failure"):
            errors.append(f"suites[{k}]: failures without first_failure")
    return not errors, errors
