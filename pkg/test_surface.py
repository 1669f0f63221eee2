from __future__ import annotations

import pytest

from magnus.errors import PreconditionError
from magnus.expansion import standard_expansion
from magnus.freegroup import generator, parse_word, render_word, word_product
from magnus.sampling import random_expansion, random_word
from magnus.surface import (
    SurfaceContext,
    boundary_conjugate,
    boundary_word,
    check_duality,
    check_nu0_additive,
    intersection_mu,
    intersection_tensor,
    is_symplectic,
    mu_matrix,
    nu0,
    poincare_dual,
    symplectic_generators,
    tau2_boundary_check,
    theta2_w0_check,
    torus_pairing,
)
from magnus.tensor import basis_vector


def test_boundary_word():
    assert render_word(boundary_word(1)) == "x1*x2*x1^-1*x2^-1"
    for g in (1, 2, 3):
        assert len(boundary_word(g)) == 4 * g
    with pytest.raises(PreconditionError):
        SurfaceContext.from_genus(0)


def test_intersection_form():
    ctx = SurfaceContext.from_genus(2)
    assert intersection_tensor(1).terms == {(1, 2): 1, (2, 1): -1}
    assert intersection_mu(ctx, basis_vector(4, 1), basis_vector(4, 3)) == 1
    assert intersection_mu(ctx, basis_vector(4, 3), basis_vector(4, 1)) == -1
    assert intersection_mu(ctx, basis_vector(4, 1), basis_vector(4, 4)) == 0
    assert mu_matrix(ctx).det == 1
    assert ctx.partner(1) == 3 and ctx.partner(4) == 2
    assert [ctx.label(i) for i in range(1, 5)] == ["A1", "A2", "B1", "B2"]


@pytest.mark.parametrize("g", [1, 2, 3])
def test_theta2_of_w0_is_the_intersection_form(g, rng):
    ctx = SurfaceContext.from_genus(g)
    assert theta2_w0_check(ctx, standard_expansion(ctx.rank, 2))
    for _ in range(20):
        assert theta2_w0_check(ctx, random_expansion(rng, ctx.rank, 3))


def test_nu0_values():
    ctx = SurfaceContext.from_genus(1)
    assert nu0(ctx, ctx.boundary) == -1
    assert nu0(ctx, parse_word("x2 x1 x2^-1 x1^-1", 2)) == 1
    with pytest.raises(PreconditionError):
        nu0(ctx, generator(2, 1))
    ctx2 = SurfaceContext.from_genus(2)
    with pytest.raises(PreconditionError):
        nu0(ctx2, parse_word("x1 x3 x1^-1 x3^-1", 4))


def test_nu0_on_products_of_boundary_conjugates(rng):
    ctx = SurfaceContext.from_genus(2)
    deltas = [boundary_conjugate(ctx, random_word(rng, 4, 4), p) for p in (1, -2, 3)]
    assert nu0(ctx, word_product(4, deltas)) == -2
    assert check_nu0_additive(ctx, deltas, random_expansion(rng, 4, 2))


def test_torus_pairing():
    assert torus_pairing() == 1


@pytest.mark.parametrize("g", [1, 2])
def test_inner_boundary_johnson(g, rng):
    ctx = SurfaceContext.from_genus(g)
    assert tau2_boundary_check(ctx, standard_expansion(ctx.rank, 3))
    assert tau2_boundary_check(ctx, random_expansion(rng, ctx.rank, 3))


def test_duality_and_symplectic_group():
    ctx = SurfaceContext.from_genus(2)
    xi1 = basis_vector(4, 1)
    assert poincare_dual(ctx, xi1).terms == {(3,): -1}
    assert check_duality(ctx)
    for A in symplectic_generators(ctx):
        assert is_symplectic(ctx, A)
        assert check_duality(ctx, A)
