from __future__ import annotations

from fractions import Fraction

import pytest

from magnus.algmap import (
    AlgebraMap,
    GLMatrix,
    IACoordinates,
    act_linear,
    apply_map,
    compose_ia_low,
    compose_maps,
    from_ia_coordinates,
    ia_factor,
    ia_with_linear,
    identity_map,
    invert_map,
    is_filtered_automorphism,
    linear_map,
    linear_part,
    maps_equal,
    to_ia_coordinates,
    twist,
)
from magnus.autfn import abelianized
from magnus.errors import NotInvertible, PreconditionError, ShapeMismatch
from magnus.sampling import random_endo, random_series
from magnus.tensor import TruncatedSeries, hom_from_images, lowest_degree, monomial, series_generator


def _shear(N: int = 3) -> AlgebraMap:
    """X1 -> X1 + X1 X2, X2 -> X2."""
    return AlgebraMap(2, N, (TruncatedSeries(2, N, {(1,): 1, (1, 2): 1}), series_generator(2, N, 2)))


def test_matrix_basics():
    A = GLMatrix.from_rows([[1, 1], [0, 1]])
    assert A.det == 1 and A.is_unimodular()
    assert A.inverse.rows == ((1, -1), (0, 1))
    assert (A @ A.inverse).is_identity()
    assert A.entry(1, 2) == 1
    assert GLMatrix.from_rows([[2, 0], [0, 1]]).inverse.rows == ((Fraction(1, 2), 0), (0, 1))
    with pytest.raises(NotInvertible):
        GLMatrix.from_rows([[1, 2], [2, 4]]).inverse
    with pytest.raises(ShapeMismatch):
        GLMatrix.from_rows([[1, 2, 3], [4, 5, 6]])


def test_act_linear_uses_columns():
    A = GLMatrix.from_rows([[1, 1], [0, 1]])  # X2 -> X1 + X2
    t = act_linear(A, monomial(2, (2, 1)))
    assert t.terms == {(1, 1): 1, (2, 1): 1}


def test_twist_by_identity_and_round_trip():
    A = GLMatrix.from_rows([[0, 1], [1, 0]])
    u = hom_from_images(2, 2, [monomial(2, (1, 2)), monomial(2, (2, 2), 3)])
    assert twist(GLMatrix.identity(2), u) == u
    assert twist(A.inverse, twist(A, u)) == u


def test_apply_and_invert():
    U = _shear()
    x1 = series_generator(2, 3, 1)
    assert apply_map(U, x1 * x1).terms == {(1, 1): 1, (1, 1, 2): 1, (1, 2, 1): 1}
    V = invert_map(U)
    assert V.image(1).terms == {(1,): 1, (1, 2): -1, (1, 2, 2): 1}
    assert compose_maps(U, V) == identity_map(2, 3)
    assert compose_maps(V, U) == identity_map(2, 3)


def test_constant_terms_are_rejected():
    with pytest.raises(PreconditionError):
        AlgebraMap(1, 2, (TruncatedSeries(1, 2, {(): 1, (1,): 1}),))


def test_ia_factor_strips_the_linear_part():
    A = GLMatrix.from_rows([[1, 1], [0, 1]])
    U = compose_maps(_shear(), linear_map(A, 3))
    assert linear_part(U) == A
    F = ia_factor(U)
    assert linear_part(F).is_identity()
    assert F == _shear()


def test_ia_coordinates_round_trip():
    c = to_ia_coordinates(_shear())
    assert c.component(1).image(1).terms == {(1, 2): 1}
    assert not c.component(2)
    assert from_ia_coordinates(c) == _shear()
    with pytest.raises(PreconditionError):
        to_ia_coordinates(linear_map(GLMatrix.from_rows([[0, 1], [1, 0]]), 3))


def test_low_degree_composition_matches_full_composition():
    n, N = 2, 3
    u = IACoordinates(
        n,
        N,
        {
            1: hom_from_images(n, 2, [monomial(n, (1, 2)), monomial(n, (2, 1), -1)]),
            2: hom_from_images(n, 3, [monomial(n, (2, 2, 1)), monomial(n, (1, 1, 1), 2)]),
        },
    )
    v = IACoordinates(
        n,
        N,
        {
            1: hom_from_images(n, 2, [monomial(n, (2, 2), 5), monomial(n, (1, 2))]),
            2: hom_from_images(n, 3, [monomial(n, (1, 2, 1)), monomial(n, (2, 1, 2), -1)]),
        },
    )
    A = GLMatrix.from_rows([[1, 1], [0, 1]])
    B = GLMatrix.from_rows([[0, 1], [1, 0]])
    w1, w2, AB = compose_ia_low(u, A, v, B)
    full = compose_maps(ia_with_linear(u, A), ia_with_linear(v, B))
    assert full == ia_with_linear(IACoordinates(n, N, {1: w1, 2: w2}), AB)


def test_filtered_automorphism_and_equality():
    U = _shear()
    assert is_filtered_automorphism(U)
    assert is_filtered_automorphism(U, integral=True)
    assert maps_equal(compose_maps(U, invert_map(U)), identity_map(2, 3))
    assert not maps_equal(U, identity_map(2, 3))

    # det 2: invertible over Q, not over Z
    D = linear_map(GLMatrix.from_rows([[2, 0], [0, 1]]), 3)
    assert is_filtered_automorphism(D)
    assert not is_filtered_automorphism(D, integral=True)
    assert not is_filtered_automorphism(linear_map(GLMatrix.from_rows([[1, 1], [1, 1]]), 3))


# -----------------------------
# seeded random maps
# -----------------------------


def _random_ia(rng, n: int, N: int) -> IACoordinates:
    u = {}
    for p in range(1, N):
        images = [random_series(rng, n, p + 1, min_degree=p + 1, terms=3).component(p + 1) for _ in range(n)]
        u[p] = hom_from_images(n, p + 1, images)
    return IACoordinates(n, N, u)


def _random_linear(rng, n: int) -> GLMatrix:
    A = abelianized(random_endo(rng, n, 3))
    if rng.random() < 0.3:
        # det 2: a general linear part, not unimodular
        rows = [[2 if i == j == 0 else int(i == j) for j in range(n)] for i in range(n)]
        A = A @ GLMatrix.from_rows(rows)
    return A


@pytest.mark.parametrize("unipotent", [True, False])
def test_inverse_round_trip_on_random_maps(rng, unipotent):
    for _ in range(15):
        n, N = rng.choice([2, 3]), rng.choice([3, 4])
        A = GLMatrix.identity(n) if unipotent else _random_linear(rng, n)
        U = ia_with_linear(_random_ia(rng, n, N), A)
        V = invert_map(U)
        assert maps_equal(compose_maps(U, V), identity_map(n, N))
        assert maps_equal(compose_maps(V, U), identity_map(n, N))
        assert linear_part(V) == A.inverse


def test_random_maps_preserve_the_filtration(rng):
    n, N = 2, 4
    for _ in range(30):
        U = ia_with_linear(_random_ia(rng, n, N), _random_linear(rng, n))
        for k in range(1, N + 1):
            z = random_series(rng, n, N, min_degree=k, terms=4)
            image = apply_map(U, z)
            if image:
                assert lowest_degree(image) >= k


def test_low_degree_composition_on_random_instances(rng):
    n, N = 2, 3
    for _ in range(100):
        u, v = _random_ia(rng, n, N), _random_ia(rng, n, N)
        A, B = _random_linear(rng, n), _random_linear(rng, n)
        w1, w2, AB = compose_ia_low(u, A, v, B)
        full = compose_maps(ia_with_linear(u, A), ia_with_linear(v, B))
        assert full == ia_with_linear(IACoordinates(n, N, {1: w1, 2: w2}), AB)
