# magnus/algmap.py
"""
Filtered algebra endomorphisms of T-hat given by generator images, the GL(H)
factor as exact matrices, degree-by-degree inversion and IA coordinates.

Composition is (U o V)(z) = U(V(z)) everywhere.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import sympy

from magnus.errors import NotInvertible, PreconditionError, ShapeMismatch, check_same_shape
from magnus.tensor import (
    HomTensor,
    Key,
    Scalar,
    Tensor,
    Terms,
    TruncatedSeries,
    _acc,
    _clean,
    _mul,
    derivation_apply,
    hom_add,
    norm_scalar,
    scalar,
)


# -----------------------------
# GL(H)
# -----------------------------


def _from_sympy(x) -> Scalar:
    x = sympy.Rational(x)
    return norm_scalar(Fraction(int(x.p), int(x.q)))


def _to_sympy(x: Scalar):
    if type(x) is int:
        return sympy.Integer(x)
    return sympy.Rational(x.numerator, x.denominator)


@dataclass(frozen=True)
class GLMatrix:
    """n x n exact matrix; column j is the image of X_j."""

    rows: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "GLMatrix":
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeMismatch("matrix must be square and non-empty")
        return cls(tuple(tuple(scalar(x) for x in r) for r in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[object]]) -> "GLMatrix":
        n = len(cols)
        return cls.from_rows([[cols[c][r] for c in range(n)] for r in range(n)])

    @classmethod
    def identity(cls, n: int) -> "GLMatrix":
        return cls(tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, r: int, c: int) -> Scalar:
        """1-based entry."""
        return self.rows[r - 1][c - 1]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[_to_sympy(x) for x in r] for r in self.rows])

    @classmethod
    def from_sympy(cls, m: sympy.Matrix) -> "GLMatrix":
        return cls(tuple(tuple(_from_sympy(m[r, c]) for c in range(m.cols)) for r in range(m.rows)))

    @cached_property
    def det(self) -> Scalar:
        return _from_sympy(self.to_sympy().det(method="bareiss"))

    @cached_property
    def inverse(self) -> "GLMatrix":
        d = self.det
        if not d:
            raise NotInvertible("singular linear part")
        m = self.to_sympy()
        if d in (1, -1):
            # integral: A^-1 = det(A) * adj(A)
            return GLMatrix.from_sympy(m.adjugate(method="bareiss") * d)
        return GLMatrix.from_sympy(m.inv())

    def is_invertible(self) -> bool:
        return bool(self.det)

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self.rows for x in r)

    def is_unimodular(self) -> bool:
        return self.is_integral() and self.det in (1, -1)

    def is_identity(self) -> bool:
        return self == GLMatrix.identity(self.n)

    def __matmul__(self, other: "GLMatrix") -> "GLMatrix":
        check_same_shape("matrix size", (self.n, other.n))
        n = self.n
        return GLMatrix(
            tuple(
                tuple(norm_scalar(sum((self.rows[r][k] * other.rows[k][c] for k in range(n)), 0)) for c in range(n))
                for r in range(n)
            )
        )

    def transpose(self) -> "GLMatrix":
        return GLMatrix(tuple(zip(*self.rows)))

    def column_terms(self, j: int) -> list[tuple[int, Scalar]]:
        return [(r + 1, self.rows[r][j - 1]) for r in range(self.n) if self.rows[r][j - 1]]


def act_linear(A: GLMatrix, t: Tensor) -> Tensor:
    """A^{(x)m} t."""
    check_same_shape("matrix/tensor rank", (A.n, t.rank))
    if t.degree == 0 or A.is_identity():
        return t
    cols = [A.column_terms(j) for j in range(1, A.n + 1)]
    out: dict = defaultdict(int)
    for key, c in t.terms.items():
        partial: list[tuple[Key, Scalar]] = [((), c)]
        for j in key:
            partial = [(k + (r,), x * a) for k, x in partial for r, a in cols[j - 1]]
        for k, x in partial:
            out[k] += x
    return Tensor(t.rank, t.degree, _clean(out))


def act_linear_series(A: GLMatrix, z: TruncatedSeries) -> TruncatedSeries:
    out: Terms = {}
    for t in z.components:
        out.update(act_linear(A, t).terms)
    return TruncatedSeries(z.rank, z.N, out)


def twist(A: GLMatrix, u: HomTensor) -> HomTensor:
    """A u := A^{(x)d} o u o A^-1."""
    check_same_shape("matrix/hom rank", (A.n, u.rank))
    if A.is_identity():
        return u
    Ainv = A.inverse
    acted = [act_linear(A, img) for img in u.images]
    images = []
    for i in range(1, u.rank + 1):
        out: dict = defaultdict(int)
        for j, c in Ainv.column_terms(i):
            _acc(out, acted[j - 1].terms, c)
        images.append(Tensor(u.rank, u.degree, _clean(out)))
    return HomTensor(u.rank, u.degree, tuple(images))


# -----------------------------
# Algebra maps
# -----------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """Unital algebra endomorphism X_i -> images[i-1] of T-hat truncated at N."""

    rank: int
    N: int
    images: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} generator images, got {len(self.images)}")
        for i, img in enumerate(self.images, start=1):
            check_same_shape("image rank/N", (img.rank, self.rank), (img.N, self.N))
            if img.constant:
                raise PreconditionError(f"image of X_{i} has a nonzero constant term")

    def image(self, i: int) -> TruncatedSeries:
        return self.images[i - 1]

    def __call__(self, z: TruncatedSeries) -> TruncatedSeries:
        return apply_map(self, z)

    @cached_property
    def image_terms(self) -> list[Mapping[Key, Scalar]]:
        return [img.terms for img in self.images]

    @cached_property
    def is_linear(self) -> bool:
        return all(len(k) == 1 for img in self.images for k in img.terms)

    @cached_property
    def is_identity(self) -> bool:
        return all(img.terms == {(i,): 1} for i, img in enumerate(self.images, start=1))


def _substitute(images: Sequence[Mapping[Key, Scalar]], terms: Mapping[Key, Scalar], N: int) -> Terms:
    # z = z0 + sum_i X_i z_i  =>  U(z) = z0 + sum_i U(X_i) U(z_i), with U(z_i) needed only to N-1
    out: dict = defaultdict(int)
    c0 = terms.get((), 0)
    if c0:
        out[()] = c0
    if N <= 0:
        return _clean(out)
    groups: dict[int, dict[Key, Scalar]] = defaultdict(dict)
    for k, v in terms.items():
        if k and len(k) <= N:
            groups[k[0]][k[1:]] = v
    for i, rest in groups.items():
        sub = _substitute(images, rest, N - 1)
        _acc(out, _mul(images[i - 1], sub, N))
    return _clean(out)


def apply_map(U: AlgebraMap, z: TruncatedSeries) -> TruncatedSeries:
    check_same_shape("map/series rank,N", (U.rank, z.rank), (U.N, z.N))
    if U.is_identity:
        return z
    if U.is_linear:
        return act_linear_series(linear_part(U), z)
    return TruncatedSeries(z.rank, z.N, _substitute(U.image_terms, z.terms, z.N))


def compose_maps(U: AlgebraMap, V: AlgebraMap) -> AlgebraMap:
    """U o V."""
    check_same_shape("map rank,N", (U.rank, V.rank), (U.N, V.N))
    if U.is_identity:
        return V
    if V.is_identity:
        return U
    return AlgebraMap(U.rank, U.N, tuple(apply_map(U, img) for img in V.images))


def compose_all(*maps: AlgebraMap) -> AlgebraMap:
    acc = maps[-1]
    for U in reversed(maps[:-1]):
        acc = compose_maps(U, acc)
    return acc


def identity_map(rank: int, N: int) -> AlgebraMap:
    return AlgebraMap(rank, N, tuple(TruncatedSeries(rank, N, {(i,): 1}) for i in range(1, rank + 1)))


def linear_map(A: GLMatrix, N: int) -> AlgebraMap:
    """The GL(H) element A acting on T-hat."""
    return AlgebraMap(
        A.n, N, tuple(TruncatedSeries(A.n, N, {(r,): a for r, a in A.column_terms(j)}) for j in range(1, A.n + 1))
    )


def linear_part(U: AlgebraMap) -> GLMatrix:
    """|U|: column j holds the degree-1 coefficients of U(X_j)."""
    n = U.rank
    return GLMatrix(tuple(tuple(U.images[c].terms.get((r + 1,), 0) for c in range(n)) for r in range(n)))


def maps_equal(U: AlgebraMap, V: AlgebraMap) -> bool:
    return U == V


def is_filtered_automorphism(U: AlgebraMap, integral: bool = False) -> bool:
    """Images in T-hat_1 (enforced by AlgebraMap) and |U| invertible; integral=True asks for det = +-1."""
    A = linear_part(U)
    if integral:
        return A.is_unimodular()
    return A.is_invertible()


def invert_map(U: AlgebraMap) -> AlgebraMap:
    """
    Two-sided inverse, solved degree by degree:
    v_1 = |U|^-1 X_i and v_m = -(|U|^-1)^{(x)m} [U(v_1 + ... + v_{m-1})]_m.
    """
    if U.is_identity:
        return U
    A = linear_part(U)
    if not A.is_invertible():
        raise NotInvertible("linear part of the algebra map is singular")
    Ainv = A.inverse
    if U.is_linear:
        return linear_map(Ainv, U.N)

    n, N = U.rank, U.N
    images = []
    for i in range(1, n + 1):
        v: Terms = {(r,): a for r, a in Ainv.column_terms(i)}
        for m in range(2, N + 1):
            w = _substitute(U.image_terms, v, m)
            wm = Tensor(n, m, {k: c for k, c in w.items() if len(k) == m})
            if not wm:
                continue
            vm = act_linear(Ainv, wm)
            for k, c in vm.terms.items():
                v[k] = -c
        images.append(TruncatedSeries(n, N, _clean(v)))
    return AlgebraMap(n, N, tuple(images))


def ia_factor(U: AlgebraMap) -> AlgebraMap:
    """U o |U|^-1, the IA(T-hat) factor of U."""
    A = linear_part(U)
    if A.is_identity():
        return U
    return compose_maps(U, linear_map(A.inverse, U.N))


# -----------------------------
# IA coordinates
# -----------------------------


@dataclass(frozen=True)
class IACoordinates:
    """u_p : H -> H^{(x)(p+1)} for p = 1..N-1, with U(X_i) = X_i + sum_p u_p(X_i)."""

    rank: int
    N: int
    u: Mapping[int, HomTensor] = field(default_factory=dict)

    def __post_init__(self):
        for p, hom in self.u.items():
            if not 1 <= p <= self.N - 1:
                raise ShapeMismatch(f"component u_{p} outside 1..{self.N - 1}")
            check_same_shape(f"u_{p} rank/degree", (hom.rank, self.rank), (hom.degree, p + 1))

    def component(self, p: int) -> HomTensor:
        if p not in self.u:
            raise PreconditionError(f"missing IA component u_{p}")
        return self.u[p]


def to_ia_coordinates(U: AlgebraMap) -> IACoordinates:
    if not linear_part(U).is_identity():
        raise PreconditionError("map has a nontrivial linear part, it is not in IA")
    u = {}
    for p in range(1, U.N):
        u[p] = HomTensor(U.rank, p + 1, tuple(img.component(p + 1) for img in U.images))
    return IACoordinates(U.rank, U.N, u)


def from_ia_coordinates(c: IACoordinates) -> AlgebraMap:
    images = []
    for i in range(1, c.rank + 1):
        terms: Terms = {(i,): 1}
        for p, hom in c.u.items():
            terms.update(hom.image(i).terms)
        images.append(TruncatedSeries(c.rank, c.N, terms))
    return AlgebraMap(c.rank, c.N, tuple(images))


def ia_with_linear(c: IACoordinates, A: GLMatrix) -> AlgebraMap:
    """((u, A)) := E^-1(u) o A."""
    return compose_maps(from_ia_coordinates(c), linear_map(A, c.N))


def compose_ia_low(
    u: IACoordinates, A: GLMatrix, v: IACoordinates, B: GLMatrix
) -> tuple[HomTensor, HomTensor, GLMatrix]:
    """
    ((u, A)) o ((v, B)) = ((w, AB)) in degrees 1 and 2:
    w_1 = u_1 + A v_1,  w_2 = u_2 + (u_1 (x) 1 + 1 (x) u_1) A v_1 + A v_2.
    """
    u1, u2 = u.component(1), u.component(2)
    v1, v2 = v.component(1), v.component(2)
    Av1 = twist(A, v1)
    w1 = hom_add(u1, Av1)
    w2 = hom_add(hom_add(u2, derivation_apply(u1, Av1)), twist(A, v2))
    return w1, w2, A @ B


