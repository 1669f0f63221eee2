from __future__ import annotations

import pytest

from magnus.errors import PreconditionError
from magnus.stasheff import LEAF, ParenWord, left_comb, pair, render, right_comb, sgn, vertices
from magnus.util import catalan


def test_vertex_counts_are_catalan():
    assert [len(vertices(p)) for p in range(1, 4)] == [1, 2, 5]
    assert [catalan(p) for p in range(6)] == [1, 1, 2, 5, 14, 42]
    assert len(vertices(6)) == catalan(6)
    with pytest.raises(PreconditionError):
        vertices(-1)


def test_rendering():
    assert render(LEAF) == "1"
    assert render(left_comb(2)) == "((12)3)"
    assert render(right_comb(2)) == "(1(23))"
    assert sorted(render(w) for w in vertices(2)) == ["((12)3)", "(1(23))"]
    assert str(pair(LEAF, LEAF)) == "(12)"


def test_signs():
    assert sgn(left_comb(2)) == 1
    assert sgn(right_comb(2)) == -1
    assert all(sgn(w) == 1 for w in [left_comb(p) for p in range(6)])


def test_sizes_and_malformed_nodes():
    assert all(w.size == 4 for w in vertices(4))
    with pytest.raises(ValueError):
        ParenWord(LEAF, None)
