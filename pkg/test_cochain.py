from __future__ import annotations

import random

import pytest

from magnus.autfn import abelianized, identity_endo, inner, magnus_k
from magnus.cochain import (
    SemidirectElement,
    check_cocycle,
    check_dsquare,
    check_h_word,
    check_k0_relation,
    check_leibniz,
    check_normalized,
    check_tau2_cochain,
    coboundary,
    compose_sigma,
    constant_cochain,
    contraction_r,
    cup,
    derivation_pairing,
    group_mul,
    h_word_cochain,
    identity_cochain,
    is_group_identity,
    k0,
    k0_cochain,
    semidirect,
    tau_cochain,
    tensor_module,
    tensor_pairing,
    theta2_tilde,
)
from magnus.errors import PreconditionError, ShapeMismatch
from magnus.expansion import standard_expansion
from magnus.freegroup import generator, parse_word
from magnus.johnson import johnson_p
from magnus.sampling import random_endo, random_expansion, random_semidirect
from magnus.stasheff import left_comb, right_comb
from magnus.tensor import Tensor, basis_vector, hom_from_images, hom_zero, identity_hom, monomial


def test_semidirect_multiplication():
    phi = magnus_k(2, 1, 2)
    a = semidirect(generator(2, 1), phi)
    b = semidirect(generator(2, 1))
    ab = group_mul(a, b)
    assert ab.word == parse_word("x1 x2 x1 x2^-1", 2)
    assert is_group_identity(semidirect(parse_word("", 2)))
    with pytest.raises(PreconditionError):
        group_mul(a, phi)


def test_k0_reads_the_word_class():
    e = SemidirectElement(parse_word("x1 x2 x1", 2), identity_endo(2))
    assert k0(e).terms == {(1,): 2, (2,): 1}
    with pytest.raises(PreconditionError):
        k0(identity_endo(2))


def test_coboundary_of_a_constant_is_the_action_minus_identity():
    x1 = basis_vector(2, 1)
    f = constant_cochain(x1, tensor_module(1))
    phi = random_endo(random.Random(3), 2)
    df = coboundary(f)
    assert df.arity == 1
    assert not df(identity_endo(2))
    assert df(phi) == f.module.act(abelianized(phi), x1) - x1


def test_arity_is_enforced(std3):
    with pytest.raises(ShapeMismatch):
        tau_cochain(std3, 1)(identity_endo(3), identity_endo(3))
    with pytest.raises(ShapeMismatch):
        cup(tensor_pairing, k0_cochain(3))


def test_tau_cochains_are_normalized_cocycles(rng):
    theta = random_expansion(rng, 2, 4)
    t1 = tau_cochain(theta, 1)
    for _ in range(3):
        phi, psi, chi = random_endo(rng, 2), random_endo(rng, 2), random_endo(rng, 2)
        assert check_cocycle(t1, [phi, psi])
        assert check_normalized(t1, [phi])
        assert check_dsquare(tau_cochain(theta, 2), [phi, psi, chi])
        assert check_tau2_cochain(theta, phi, psi)


def test_k0_relation_on_the_semidirect_product(rng):
    theta = random_expansion(rng, 2, 3)
    for _ in range(4):
        assert check_k0_relation(theta, random_semidirect(rng, 2, 4), random_semidirect(rng, 2, 4))
    assert check_cocycle(k0_cochain(2), [random_semidirect(rng, 2, 4), random_semidirect(rng, 2, 4)])


def test_leibniz_rule(rng):
    theta = random_expansion(rng, 2, 4)
    es = [random_semidirect(rng, 2, 3) for _ in range(3)]
    assert check_leibniz(tensor_pairing, k0_cochain(2), theta2_tilde(theta), es)
    t1 = tau_cochain(theta, 1)
    phis = [random_endo(rng, 2) for _ in range(3)]
    assert check_leibniz(derivation_pairing, t1, t1, phis)


def test_contraction_r():
    n = 2
    u = hom_from_images(n, 2, [monomial(n, (1, 2)), monomial(n, (1, 1))])
    assert contraction_r(1, u).terms == {(2,): 1}
    v = hom_from_images(n, 2, [monomial(n, (2, 1)), monomial(n, (1, 2), 0)])
    assert not contraction_r(1, v)
    with pytest.raises(ShapeMismatch):
        contraction_r(2, u)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_contraction_of_inner_generators(n):
    std = standard_expansion(n, 2)
    for i in range(1, n + 1):
        r = contraction_r(1, johnson_p(std, inner(generator(n, i)), 1))
        assert r == (1 - n) * basis_vector(n, i)


def test_h_words(rng):
    theta = random_expansion(rng, 2, 4)
    phis = [random_endo(rng, 2) for _ in range(3)]
    assert h_word_cochain(theta, left_comb(0))() == identity_hom(2)
    assert h_word_cochain(theta, left_comb(1))(phis[0]) == johnson_p(theta, phis[0], 1)
    for p in (1, 2, 3):
        assert check_h_word(theta, phis[:p])
    assert h_word_cochain(theta, right_comb(2)).arity == 2
    with pytest.raises(PreconditionError):
        h_word_cochain(theta, left_comb(4))


def test_compose_sigma_of_one_value_is_that_value():
    u = hom_from_images(2, 2, [monomial(2, (1, 2)), monomial(2, (2, 2))])
    assert compose_sigma([u]) == u
    assert compose_sigma([identity_hom(2), u]) == u
    assert identity_cochain(2)() == identity_hom(2)


def test_compose_sigma_worked_example():
    # u = l1 (x) X1 X2: X1 -> X1 X2, X2 -> 0
    u = hom_from_images(2, 2, [monomial(2, (1, 2)), Tensor(2, 2)])
    s2 = compose_sigma([u, u])
    assert s2.degree == 3
    assert s2.image(1).terms == {(1, 2, 2): 1}
    assert not s2.image(2)
    assert compose_sigma([u, u, u]).image(1).terms == {(1, 2, 2, 2): 1}
    assert compose_sigma([hom_zero(2, 2), hom_zero(2, 2)]) == hom_zero(2, 3)
