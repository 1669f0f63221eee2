# magnus/surface.py
"""
Genus-g symplectic specialization: n = 2g, symplectic basis X_1..X_g, X_{g+1}..X_{2g}.

I = sum_i (X_i X_{g+i} - X_{g+i} X_i), mu(X_i, X_{g+j}) = delta_ij, and the
duality H* -> H is l -> (1 (x) l)(I). Linear forms are degree-1 tensors holding
their coefficients on the dual basis xi_1..xi_n.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

from magnus.algmap import GLMatrix, act_linear
from magnus.autfn import inner
from magnus.check import Check, all_of, compare
from magnus.errors import PreconditionError, ShapeMismatch
from magnus.expansion import MagnusExpansion, component, standard_expansion
from magnus.freegroup import Word, abelianize, commutator, conjugate, generator, word_inv, word_mul, word_pow, word_product
from magnus.johnson import johnson_p
from magnus.tensor import Scalar, Tensor, _clean, basis_vector, hom_zero, tensor_mul


@dataclass(frozen=True)
class SurfaceContext:
    genus: int

    @classmethod
    def from_genus(cls, g: int) -> "SurfaceContext":
        if g < 1:
            raise PreconditionError(f"genus must be at least 1, got {g}")
        return cls(g)

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def boundary(self) -> Word:
        return boundary_word(self.genus)

    @property
    def intersection(self) -> Tensor:
        return intersection_tensor(self.genus)

    def partner(self, i: int) -> int:
        """The index paired with i: g+i for i <= g, i-g otherwise."""
        g = self.genus
        return i + g if i <= g else i - g

    def label(self, i: int) -> str:
        g = self.genus
        return f"A{i}" if i <= g else f"B{i - g}"


def boundary_word(g: int) -> Word:
    """w_0 = prod_i x_i x_{g+i} x_i^-1 x_{g+i}^-1, of length 4g."""
    if g < 1:
        raise PreconditionError(f"genus must be at least 1, got {g}")
    n = 2 * g
    return word_product(n, [commutator(generator(n, i), generator(n, g + i)) for i in range(1, g + 1)])


def intersection_tensor(g: int) -> Tensor:
    n = 2 * g
    terms = {}
    for i in range(1, g + 1):
        terms[(i, g + i)] = 1
        terms[(g + i, i)] = -1
    return Tensor(n, 2, terms)


def _check_surface_rank(ctx: SurfaceContext, rank: int) -> None:
    if rank != ctx.rank:
        raise ShapeMismatch(f"genus {ctx.genus} needs rank {ctx.rank}, got {rank}")


def intersection_mu(ctx: SurfaceContext, a: Tensor, b: Tensor) -> Scalar:
    """mu(a, b) = sum a_i b_j I[(i, j)]."""
    if a.degree != 1 or b.degree != 1:
        raise ShapeMismatch("the intersection form pairs degree-1 tensors")
    _check_surface_rank(ctx, a.rank)
    _check_surface_rank(ctx, b.rank)
    I = ctx.intersection
    total = 0
    for (i,), x in a.terms.items():
        for (j,), y in b.terms.items():
            total += x * y * I.coefficient((i, j))
    return total


def mu_matrix(ctx: SurfaceContext) -> GLMatrix:
    n = ctx.rank
    return GLMatrix.from_rows(
        [[intersection_mu(ctx, basis_vector(n, i), basis_vector(n, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def poincare_dual(ctx: SurfaceContext, l: Tensor) -> Tensor:
    """l -> (1 (x) l)(I) = sum I[(i, j)] l_j X_i."""
    _check_surface_rank(ctx, l.rank)
    out: dict = defaultdict(int)
    for (i, j), c in ctx.intersection.terms.items():
        out[(i,)] += c * l.coefficient((j,))
    return Tensor(ctx.rank, 1, _clean(out))


def poincare_dual_inv(ctx: SurfaceContext, Y: Tensor) -> Tensor:
    """Y -> mu(Y, -); coefficient j is sum_i Y_i I[(i, j)]."""
    _check_surface_rank(ctx, Y.rank)
    out: dict = defaultdict(int)
    for (i, j), c in ctx.intersection.terms.items():
        out[(j,)] += c * Y.coefficient((i,))
    return Tensor(ctx.rank, 1, _clean(out))


def dual_action(A: GLMatrix, l: Tensor) -> Tensor:
    """A l := l o A^-1."""
    Ainv = A.inverse
    out: dict = defaultdict(int)
    for (k,), c in l.terms.items():
        for j in range(1, A.n + 1):
            out[(j,)] += c * Ainv.entry(k, j)
    return Tensor(l.rank, 1, _clean(out))


def is_symplectic(ctx: SurfaceContext, A: GLMatrix) -> bool:
    """mu(A a, A b) = mu(a, b) on the basis."""
    J = mu_matrix(ctx)
    return A.transpose() @ J @ A == J


def symplectic_generators(ctx: SurfaceContext) -> list[GLMatrix]:
    """Transvections X_{g+i} -> X_{g+i} + X_i and X_i -> X_i + X_{g+i}, plus X_i -> X_i + X_{i+1} paired with X_{g+i+1} -> X_{g+i+1} - X_{g+i}."""
    g, n = ctx.genus, ctx.rank

    def from_images(images: dict[int, dict[int, int]]) -> GLMatrix:
        cols = []
        for j in range(1, n + 1):
            col = [0] * n
            for r, c in images.get(j, {j: 1}).items():
                col[r - 1] += c
            cols.append(col)
        return GLMatrix.from_columns(cols)

    out = []
    for i in range(1, g + 1):
        out.append(from_images({g + i: {g + i: 1, i: 1}}))
        out.append(from_images({i: {i: 1, g + i: 1}}))
    for i in range(1, g):
        out.append(from_images({i: {i: 1, i + 1: 1}, g + i + 1: {g + i + 1: 1, g + i: -1}}))
    return out


def check_duality(ctx: SurfaceContext, A: Optional[GLMatrix] = None) -> Check:
    """The duality and its inverse are mutually inverse, agree with mu, and commute with A when A is symplectic."""
    n = ctx.rank
    checks = []
    for i in range(1, n + 1):
        X = basis_vector(n, i)
        xi = basis_vector(n, i)
        checks.append(compare(f"dual o dual^-1 at X{i}", poincare_dual(ctx, poincare_dual_inv(ctx, X)), X))
        checks.append(compare(f"dual^-1 o dual at xi{i}", poincare_dual_inv(ctx, poincare_dual(ctx, xi)), xi))
        for j in range(1, n + 1):
            checks.append(
                compare(
                    f"dual^-1(X{i})(X{j}) = mu",
                    poincare_dual_inv(ctx, X).coefficient((j,)),
                    intersection_mu(ctx, X, basis_vector(n, j)),
                )
            )
        if A is not None:
            checks.append(
                compare(f"equivariance at xi{i}", poincare_dual(ctx, dual_action(A, xi)), act_linear(A, poincare_dual(ctx, xi)))
            )
    return all_of("poincare duality", checks, genus=ctx.genus)


# -----------------------------
# Boundary word identities
# -----------------------------


def theta2_w0_check(ctx: SurfaceContext, theta: MagnusExpansion) -> Check:
    """theta_2(w_0) = I for every expansion."""
    _check_surface_rank(ctx, theta.rank)
    return compare("theta2(w0) = I", component(theta, ctx.boundary, 2), ctx.intersection, genus=ctx.genus)


def nu0(ctx: SurfaceContext, delta: Word, theta: Optional[MagnusExpansion] = None) -> Scalar:
    """
    nu_0(delta) I = -theta_2(delta). The certificate [delta] = 0 and theta_2(delta) in Z I
    is necessary for delta in the normal closure of w_0, and is all that is checked.
    """
    _check_surface_rank(ctx, delta.rank)
    if any(abelianize(delta)):
        raise PreconditionError(f"{delta} is not in the scope of nu0: [delta] != 0")
    theta = theta or standard_expansion(ctx.rank, 2)
    t2 = component(theta, delta, 2)
    I = ctx.intersection
    c = t2.coefficient((1, ctx.genus + 1))
    if t2 != c * I:
        raise PreconditionError(f"{delta} is not in the scope of nu0: theta2 is not a multiple of I")
    return -c


def check_nu0_additive(ctx: SurfaceContext, deltas: Sequence[Word], theta: Optional[MagnusExpansion] = None) -> Check:
    """nu0 of a product equals the sum of nu0 of the factors."""
    product = word_product(ctx.rank, deltas)
    total = sum((nu0(ctx, d, theta) for d in deltas), 0)
    return compare("nu0 additive", nu0(ctx, product, theta), total, words=list(deltas))


def boundary_conjugate(ctx: SurfaceContext, gamma: Word, power: int = 1) -> Word:
    """gamma w_0^power gamma^-1."""
    return conjugate(gamma, word_pow(ctx.boundary, power))


def torus_pairing(theta: Optional[MagnusExpansion] = None) -> Scalar:
    """
    nu-hat summed over the normalized bar 2-chain [x1|x2] + [x1x2|x1^-1] - [x1|x1^-1]
    of the torus, using the section x1^a x2^b of the abelianized group.
    """
    ctx = SurfaceContext.from_genus(1)
    n = ctx.rank

    def section(v: tuple[int, int]) -> Word:
        return word_mul(word_pow(generator(n, 1), v[0]), word_pow(generator(n, 2), v[1]))

    def nu_hat(a: tuple[int, int], b: tuple[int, int]) -> Scalar:
        ab = (a[0] + b[0], a[1] + b[1])
        return nu0(ctx, word_product(n, [section(ab), word_inv(section(b)), word_inv(section(a))]), theta)

    x1, x2, x1_inv = (1, 0), (0, 1), (-1, 0)
    return nu_hat(x1, x2) + nu_hat((1, 1), x1_inv) - nu_hat(x1, x1_inv)


def tau2_boundary_check(ctx: SurfaceContext, theta: MagnusExpansion) -> Check:
    """tau_1(inner(w_0)) = 0 and tau_2(inner(w_0)) a = I a - a I on the basis."""
    _check_surface_rank(ctx, theta.rank)
    n = ctx.rank
    phi = inner(ctx.boundary)
    I = ctx.intersection
    checks = [compare("tau1(inner(w0)) = 0", johnson_p(theta, phi, 1), hom_zero(n, 2))]
    t2 = johnson_p(theta, phi, 2)
    for i in range(1, n + 1):
        a = basis_vector(n, i)
        checks.append(compare(f"tau2(inner(w0)) X{i}", t2(a), tensor_mul(I, a) - tensor_mul(a, I)))
    return all_of("inner boundary johnson", checks, genus=ctx.genus)
