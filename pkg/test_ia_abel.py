from __future__ import annotations

import pytest

from magnus.autfn import magnus_generators, magnus_k
from magnus.errors import PreconditionError, WordSyntaxError
from magnus.expansion import standard_expansion
from magnus.freegroup import parse_word
from magnus.ia_abel import (
    AbelCoordinates,
    abelianize_ia_word,
    basis,
    basis_label,
    basis_size,
    check_generator_matrix,
    check_ia_word,
    check_inner_contraction,
    check_iota,
    from_lambda2,
    generator_row,
    ia_word_endo,
    iota_star,
    iota_star_rank,
    is_signed_permutation,
    lambda2_coordinates,
    parse_ia_word,
    render_ia_word,
    tau1_matrix,
)
from magnus.johnson import johnson_p
from magnus.sampling import random_expansion, random_ia_word, random_word
from magnus.tensor import basis_vector, hom_from_images, monomial


def test_basis_layout():
    assert basis_size(3) == 9 == len(basis(3))
    assert basis(2) == ((1, 1, 2), (2, 1, 2))
    assert basis_label((1, 1, 2)) == "l1(x)[X1,X2]"


def test_generator_rows():
    row = generator_row(magnus_k(3, 1, 2))
    assert row.values[basis(3).index((1, 1, 2))] == -1
    assert sum(abs(v) for v in row.values) == 1
    assert generator_row(magnus_k(3, 2, 1)).support() == {"l2(x)[X1,X2]": 1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generator_matrix_is_unimodular(n):
    M = tau1_matrix(n)
    assert M.n == basis_size(n)
    assert abs(M.det) == 1
    assert is_signed_permutation(M)
    assert check_generator_matrix(n)


def test_rank_three_matrix_entry():
    M = tau1_matrix(3)
    labels = [phi.label for phi in magnus_generators(3)]
    r = labels.index("K[1,2]")
    assert M.rows[r][basis(3).index((1, 1, 2))] == -1


def test_lambda2_round_trip_and_antisymmetry():
    c = AbelCoordinates(2, (3, -1))
    assert lambda2_coordinates(from_lambda2(c)) == c
    with pytest.raises(PreconditionError):
        lambda2_coordinates(hom_from_images(2, 2, [monomial(2, (1, 2)), monomial(2, (1, 2), 0)]))


def test_parse_ia_words():
    letters = parse_ia_word("K[1,2]*K[1,2,3]^-1", 3)
    assert [(x.indices, x.exponent) for x in letters] == [((1, 2), 1), ((1, 2, 3), -1)]
    assert render_ia_word(letters) == "K[1,2]*K[1,2,3]^-1"
    assert parse_ia_word("", 3) == []
    with pytest.raises(WordSyntaxError):
        parse_ia_word("K[1,1]", 3)
    with pytest.raises(WordSyntaxError):
        parse_ia_word("K[1,3,2]", 3)
    with pytest.raises(WordSyntaxError):
        parse_ia_word("K(1,2)", 3)


def test_abelianization_is_additive(rng):
    c = abelianize_ia_word("K[1,2]^2*K[2,1]^-1", 3)
    assert c.support() == {"l1(x)[X1,X2]": -2, "l2(x)[X1,X2]": -1}
    assert not abelianize_ia_word("K[1,2]*K[1,2]^-1", 3)
    for _ in range(5):
        assert check_ia_word(random_ia_word(rng, 3), 3)


def test_ia_word_endo_is_the_composite():
    phi = ia_word_endo("K[1,2]*K[2,1]", 2)
    assert phi.images[0] == parse_word("x2 x1 x2^-1", 2)
    assert phi.images[1] == parse_word("x2 x1 x2 x1^-1 x2^-1", 2)
    std = standard_expansion(2, 2)
    assert lambda2_coordinates(johnson_p(std, phi, 1)) == abelianize_ia_word("K[1,2]*K[2,1]", 2)


def test_iota_star():
    Y = iota_star(basis_vector(3, 1))
    assert Y.image(2).terms == {(1, 2): 1, (2, 1): -1}
    assert not Y.image(1)
    assert iota_star_rank(3) == 3


def test_inner_automorphisms_embed(rng):
    theta = random_expansion(rng, 3, 3)
    for _ in range(4):
        assert check_iota(theta, random_word(rng, 3, 5))
    for i in range(1, 4):
        assert check_inner_contraction(theta, i)
