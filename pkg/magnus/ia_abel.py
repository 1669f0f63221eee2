# magnus/ia_abel.py
"""
The abelianization of IA_n through tau_1.

Coordinates live on the basis l_i (x) (X_j X_k - X_k X_j), j < k, of H* (x) L^2 H,
ordered lexicographically in (i, j, k). Rows of the generator matrix follow
magnus_generators(n).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import pyparsing as pp
import sympy

from magnus.algmap import GLMatrix
from magnus.autfn import (
    FreeGroupEndo,
    compose_all_endos,
    endo_inverse,
    inner,
    magnus_generators,
    magnus_k,
    magnus_k3,
)
from magnus.check import Check, all_of, compare
from magnus.cochain import contraction_r
from magnus.errors import PreconditionError, ShapeMismatch, WordSyntaxError
from magnus.expansion import MagnusExpansion, abelian_class, standard_expansion
from magnus.freegroup import Word, generator
from magnus.johnson import johnson_p
from magnus.tensor import HomTensor, Scalar, Tensor, basis_vector, hom_from_images, tensor_mul

Basis = tuple[tuple[int, int, int], ...]


@lru_cache(maxsize=None)
def basis(n: int) -> Basis:
    return tuple((i, j, k) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(j + 1, n + 1))


def basis_size(n: int) -> int:
    """n^2 (n-1) / 2."""
    return n * n * (n - 1) // 2


def basis_label(b: tuple[int, int, int]) -> str:
    i, j, k = b
    return f"l{i}(x)[X{j},X{k}]"


@dataclass(frozen=True)
class AbelCoordinates:
    rank: int
    values: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.values) != basis_size(self.rank):
            raise ShapeMismatch(f"expected {basis_size(self.rank)} coordinates, got {len(self.values)}")

    def __bool__(self) -> bool:
        return any(self.values)

    def __add__(self, other: "AbelCoordinates") -> "AbelCoordinates":
        if other.rank != self.rank:
            raise ShapeMismatch(f"coordinate ranks differ: {self.rank} != {other.rank}")
        return AbelCoordinates(self.rank, tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, c: int) -> "AbelCoordinates":
        return AbelCoordinates(self.rank, tuple(c * a for a in self.values))

    def support(self) -> dict[str, Scalar]:
        return {basis_label(b): v for b, v in zip(basis(self.rank), self.values) if v}


def zero_coordinates(n: int) -> AbelCoordinates:
    return AbelCoordinates(n, (0,) * basis_size(n))


def lambda2_coordinates(u: HomTensor) -> AbelCoordinates:
    """Coordinates of u in H* (x) L^2 H; u must be antisymmetric in its two output slots."""
    if u.degree != 2:
        raise ShapeMismatch(f"expected a hom of degree 2, got {u.degree}")
    for i, img in enumerate(u.images, start=1):
        for (j, k), c in img.terms.items():
            if j == k or img.coefficient((k, j)) != -c:
                raise PreconditionError(f"image of X_{i} is not antisymmetric at ({j},{k})")
    return AbelCoordinates(u.rank, tuple(u.image(i).coefficient((j, k)) for i, j, k in basis(u.rank)))


def from_lambda2(c: AbelCoordinates) -> HomTensor:
    n = c.rank
    images: list[dict] = [{} for _ in range(n)]
    for (i, j, k), v in zip(basis(n), c.values):
        if v:
            images[i - 1][(j, k)] = v
            images[i - 1][(k, j)] = -v
    return hom_from_images(n, 2, [Tensor(n, 2, img) for img in images])


# -----------------------------
# Generator matrix
# -----------------------------


@lru_cache(maxsize=None)
def tau1_matrix(n: int) -> GLMatrix:
    """Row r holds the coordinates of tau_1 of the r-th Magnus generator, theta = std."""
    if n < 2:
        raise PreconditionError(f"rank must be at least 2, got {n}")
    std = standard_expansion(n, 2)
    return GLMatrix.from_rows([lambda2_coordinates(johnson_p(std, phi, 1)).values for phi in magnus_generators(n)])


def generator_row(phi: FreeGroupEndo) -> AbelCoordinates:
    """
    Closed form: K[i,l] -> l_i (x) (X_l X_i - X_i X_l), K[i,l,s] -> l_i (x) (X_l X_s - X_s X_l).
    """
    n = phi.rank
    idx = _label_indices(phi.label)
    values = [0] * basis_size(n)
    pos = {b: r for r, b in enumerate(basis(n))}
    if len(idx) == 2:
        i, l = idx
        values[pos[(i, min(i, l), max(i, l))]] = 1 if l < i else -1
    else:
        i, l, s = idx
        values[pos[(i, l, s)]] = 1
    return AbelCoordinates(n, tuple(values))


def _label_indices(label: str) -> tuple[int, ...]:
    if not (label.startswith("K[") and label.endswith("]")):
        raise PreconditionError(f"{label!r} is not a Magnus generator")
    return tuple(int(x) for x in label[2:-1].split(","))


def is_signed_permutation(M: GLMatrix) -> bool:
    for r in M.rows:
        nz = [x for x in r if x]
        if len(nz) != 1 or nz[0] not in (1, -1):
            return False
    for c in range(M.n):
        if sum(1 for r in M.rows if r[c]) != 1:
            return False
    return True


def check_generator_matrix(n: int) -> Check:
    """The generator matrix is a signed permutation with |det| = 1 and matches the closed form."""
    M = tau1_matrix(n)
    closed = GLMatrix.from_rows([generator_row(phi).values for phi in magnus_generators(n)])
    return all_of(
        "tau1 generator matrix",
        [
            compare("signed permutation", is_signed_permutation(M), True),
            compare("|det| = 1", abs(M.det), 1),
            compare("closed form rows", M, closed),
        ],
        n=n,
    )


# -----------------------------
# IA words
# -----------------------------


@dataclass(frozen=True)
class IALetter:
    position: int
    indices: tuple[int, ...]
    exponent: int

    def __str__(self) -> str:
        head = "K[" + ",".join(str(i) for i in self.indices) + "]"
        return head if self.exponent == 1 else f"{head}^{self.exponent}"


_INT = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_EXP = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
_INDICES = pp.Group(_INT + pp.Suppress(",") + _INT + pp.Optional(pp.Suppress(",") + _INT))
_LETTER = (
    pp.Suppress("K")
    + pp.Suppress("[")
    + _INDICES("indices")
    + pp.Suppress("]")
    + pp.Optional(pp.Suppress("^") + _EXP, default=1)("exp")
).set_parse_action(lambda s, loc, t: IALetter(loc, tuple(t.indices), int(t.exp[0])))
_IA_WORD = pp.Optional(_LETTER + pp.ZeroOrMore(pp.Suppress("*") + _LETTER))


def parse_ia_word(text: str, n: int) -> list[IALetter]:
    """Parse "K[1,2]*K[1,2,3]^-1"; the empty string is the identity."""
    try:
        letters = list(_IA_WORD.parse_string(text, parse_all=True))
    except pp.ParseException as e:
        raise WordSyntaxError(f"cannot parse IA word: {e.msg}", text, e.loc) from None
    for letter in letters:
        if not _is_generator(letter.indices, n):
            raise WordSyntaxError(f"unknown IA generator {letter} for rank {n}", text, letter.position)
    return letters


def _is_generator(idx: tuple[int, ...], n: int) -> bool:
    if any(i < 1 or i > n for i in idx):
        return False
    if len(idx) == 2:
        return idx[0] != idx[1]
    i, l, s = idx
    return i != l and l < s and s != i


def letter_endo(letter: IALetter, n: int) -> FreeGroupEndo:
    idx = letter.indices
    phi = magnus_k(n, *idx) if len(idx) == 2 else magnus_k3(n, *idx)
    if letter.exponent < 0:
        phi = endo_inverse(phi)
    return compose_all_endos(n, [phi] * abs(letter.exponent))


def ia_word_endo(text: str, n: int) -> FreeGroupEndo:
    return compose_all_endos(n, [letter_endo(x, n) for x in parse_ia_word(text, n)])


def abelianize_ia_word(text: str, n: int) -> AbelCoordinates:
    """Signed sum of generator rows."""
    M = tau1_matrix(n)
    row = {phi.label: r for r, phi in enumerate(magnus_generators(n))}
    acc = zero_coordinates(n)
    for letter in parse_ia_word(text, n):
        label = "K[" + ",".join(str(i) for i in letter.indices) + "]"
        acc = acc + AbelCoordinates(n, M.rows[row[label]]).scaled(letter.exponent)
    return acc


def check_ia_word(text: str, n: int) -> Check:
    """abelianize_ia_word agrees with tau_1 of the composed automorphism."""
    lhs = abelianize_ia_word(text, n)
    rhs = lambda2_coordinates(johnson_p(standard_expansion(n, 2), ia_word_endo(text, n), 1))
    return compare("IA word abelianization", lhs, rhs, word=text)


def render_ia_word(letters: Sequence[IALetter]) -> str:
    return "*".join(str(x) for x in letters)


# -----------------------------
# Inner automorphisms
# -----------------------------


def iota_star(Y: Tensor) -> HomTensor:
    """Z -> YZ - ZY."""
    if Y.degree != 1:
        raise ShapeMismatch(f"iota_star takes a degree-1 tensor, got degree {Y.degree}")
    n = Y.rank
    images = []
    for j in range(1, n + 1):
        Z = basis_vector(n, j)
        images.append(tensor_mul(Y, Z) - tensor_mul(Z, Y))
    return hom_from_images(n, 2, images)


def iota_star_matrix(n: int) -> sympy.Matrix:
    """n x n^2(n-1)/2; row j holds the coordinates of iota_star(X_j)."""
    return sympy.Matrix([list(lambda2_coordinates(iota_star(basis_vector(n, j))).values) for j in range(1, n + 1)])


def iota_star_rank(n: int) -> int:
    return int(iota_star_matrix(n).rank())


def check_iota(theta: MagnusExpansion, g: Word) -> Check:
    """tau_1(inner(g)) = iota_star([g])."""
    return compare("tau1 o inner = iota_star", johnson_p(theta, inner(g), 1), iota_star(abelian_class(g)), word=g)


def check_inner_contraction(theta: MagnusExpansion, i: int) -> Check:
    """r_1(tau_1(inner(x_i))) = (1 - n) X_i."""
    n = theta.rank
    lhs = contraction_r(1, johnson_p(theta, inner(generator(n, i)), 1))
    return compare("r1 tau1 inner = (1-n) id", lhs, (1 - n) * basis_vector(n, i), i=i)
