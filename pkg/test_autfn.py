from __future__ import annotations

import pytest

from magnus.autfn import (
    LIBRARY_KINDS,
    abelianized,
    apply_endo,
    certify_inverse,
    compose_endos,
    endo_commutator,
    endo_inverse,
    generator_library,
    inner,
    is_identity_endo,
    magnus_generators,
    magnus_k,
    magnus_k3,
    nielsen_right,
)
from magnus.errors import PreconditionError
from magnus.freegroup import generator, parse_word, render_word


def test_magnus_k_images():
    phi = magnus_k(3, 1, 2)
    assert render_word(phi.images[0]) == "x2*x1*x2^-1"
    assert phi.images[1] == generator(3, 2)
    psi = magnus_k3(3, 1, 2, 3)
    assert render_word(psi.images[0]) == "x1*x2*x3*x2^-1*x3^-1"


def test_magnus_generator_count_and_order():
    gens = magnus_generators(3)
    assert len(gens) == 9
    assert [g.label for g in gens[:3]] == ["K[1,2]", "K[1,3]", "K[2,1]"]
    assert gens[-1].label == "K[3,1,2]"
    assert len(magnus_generators(4)) == 4 * 4 * 3 // 2


def test_bad_indices():
    with pytest.raises(PreconditionError):
        magnus_k(3, 1, 1)
    with pytest.raises(PreconditionError):
        magnus_k3(3, 1, 3, 2)
    with pytest.raises(PreconditionError):
        magnus_k(3, 1, 4)


def test_every_library_entry_has_a_certified_inverse():
    for kind in LIBRARY_KINDS:
        for phi in generator_library(kind, 3):
            assert certify_inverse(phi), phi.label
    with pytest.raises(PreconditionError):
        generator_library("bogus", 3)


def test_composition_applies_right_factor_first():
    phi, psi = nielsen_right(2, 1, 2), magnus_k(2, 2, 1)
    w = parse_word("x1 x2", 2)
    assert apply_endo(compose_endos(phi, psi), w) == apply_endo(phi, apply_endo(psi, w))
    both = compose_endos(phi, psi)
    assert is_identity_endo(compose_endos(both, endo_inverse(both)))


def test_abelianization():
    assert abelianized(magnus_k(3, 1, 2)).is_identity()
    assert abelianized(nielsen_right(2, 1, 2)).rows == ((1, 0), (1, 1))
    assert abelianized(endo_commutator(nielsen_right(2, 1, 2), magnus_k(2, 2, 1))).is_identity()


def test_inner_conjugates():
    g = parse_word("x1 x2", 2)
    iota = inner(g)
    assert render_word(iota(generator(2, 1))) == "x1*x2*x1*x2^-1*x1^-1"
    assert certify_inverse(iota)
