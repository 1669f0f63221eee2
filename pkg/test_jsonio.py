from __future__ import annotations

import json
from fractions import Fraction

import pytest

from magnus.algmap import GLMatrix
from magnus.autfn import magnus_k
from magnus.check import compare
from magnus.errors import MagnusError
from magnus.expansion import standard_expansion
from magnus.freegroup import parse_word
from magnus.johnson import johnson_coordinates, johnson_p, total_johnson
from magnus.jsonio import (
    dumps,
    algmap_from_json,
    endo_from_json,
    expansion_from_json,
    from_json,
    hom_from_json,
    ia_from_json,
    matrix_from_json,
    series_from_json,
    series_to_json,
    tensor_from_json,
    tensor_to_json,
    to_json,
    to_jsonable,
    validate_results,
    word_from_json,
)
from magnus.sampling import random_expansion
from magnus.stasheff import left_comb
from magnus.tensor import Tensor, TruncatedSeries


def test_tensor_json_uses_string_scalars():
    t = Tensor.from_terms(2, 2, {(1, 2): Fraction(-1, 2), (2, 1): 3})
    d = tensor_to_json(t)
    assert d == {"rank": 2, "degree": 2, "terms": {"1,2": "-1/2", "2,1": "3"}}
    assert tensor_from_json(d) == t


def test_series_json_lists_every_degree():
    s = TruncatedSeries(2, 2, {(): 1, (2,): 1})
    d = series_to_json(s)
    assert [c["degree"] for c in d["components"]] == [0, 1, 2]
    assert d["components"][0]["terms"] == {"": "1"}


def test_series_json_accepts_the_bare_array_form():
    s = TruncatedSeries(2, 3, {(): 1, (1,): 1, (1, 2): Fraction(1, 2)})
    d = series_to_json(s)
    assert series_from_json(d) == s
    assert series_from_json(d["components"] + [{"N": 3}]) == s
    with pytest.raises(MagnusError):
        series_from_json(d["components"])
    with pytest.raises(MagnusError):
        series_from_json([{"N": 3}])


def test_standard_expansion_has_an_empty_xi(rng, tmp_path):
    assert to_jsonable(standard_expansion(3, 4)) == {"rank": 3, "N": 4, "xi": []}
    theta = random_expansion(rng, 2, 3)
    path = tmp_path / "theta.json"
    to_json(theta, path)
    assert expansion_from_json(from_json(path)) == theta


def test_endo_and_word_json():
    phi = magnus_k(3, 1, 2)
    back = endo_from_json(json.loads(dumps(phi)))
    assert back == phi and back.label == "K[1,2]" and back.inverse == phi.inverse
    w = parse_word("x1 x2^-1", 2)
    assert word_from_json(to_jsonable(w)) == w


def test_ia_coordinates_and_matrices():
    c = johnson_coordinates(standard_expansion(2, 3), magnus_k(2, 1, 2))
    d = to_jsonable(c)
    assert set(d["u"]) == {"1", "2"}
    assert ia_from_json(d) == c
    A = GLMatrix.from_rows([[1, 1], [0, 1]])
    assert matrix_from_json(to_jsonable(A)) == A


def test_hom_tensors_and_algebra_maps_decode(rng):
    theta = random_expansion(rng, 3, 4)
    phi = magnus_k(3, 1, 2)
    u = johnson_p(theta, phi, 2)
    assert hom_from_json(json.loads(dumps(u))) == u
    U = total_johnson(theta, phi)
    assert algmap_from_json(json.loads(dumps(U))) == U
    with pytest.raises(MagnusError):
        hom_from_json({"rank": 3, "images": []})


def test_checks_and_trees_serialize():
    c = compare("x = y", 1, Fraction(1, 2), word=parse_word("x1", 1), tree=left_comb(2))
    d = to_jsonable(c)
    assert d["ok"] is False
    assert d["rhs"] == "1/2"
    assert d["inputs"]["tree"] == "((12)3)"
    assert d["inputs"]["word"] == {"rank": 1, "letters": [[1, 1]]}


def test_missing_keys_raise():
    with pytest.raises(MagnusError):
        tensor_from_json({"rank": 2})


def test_validate_results():
    ok, errors = validate_results({"config": {}, "suites": [{"suite": "a", "identity": "i", "trials": 1, "passed": 1, "failed": 0}]})
    assert ok and not errors
    ok, errors = validate_results({"config": {}, "suites": [{"suite": "a", "failed": 1}]})
    assert not ok
    assert any("first_failure" in e for e in errors)
    assert validate_results({"suites": None})[0] is False
