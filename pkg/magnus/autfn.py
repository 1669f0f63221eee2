# magnus/autfn.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from magnus.algmap import GLMatrix
from magnus.errors import PreconditionError, ShapeMismatch, check_same_shape
from magnus.freegroup import (
    Letter,
    Word,
    _reduce,
    abelianize,
    commutator,
    generator,
    word_inv,
    word_product,
)

LIBRARY_KINDS = ("magnus-K", "nielsen", "inner")


@dataclass(frozen=True)
class FreeGroupEndo:
    """Endomorphism of F_n by generator images, optionally carrying a certified inverse."""

    rank: int
    images: tuple[Word, ...]
    inverse: Optional[tuple[Word, ...]] = field(default=None, compare=False)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} images, got {len(self.images)}")
        for w in self.images + (self.inverse or ()):
            check_same_shape("image rank", (w.rank, self.rank))
        if self.inverse is not None and len(self.inverse) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} inverse images, got {len(self.inverse)}")

    @property
    def has_inverse(self) -> bool:
        return self.inverse is not None

    def __call__(self, w: Word) -> Word:
        return apply_endo(self, w)

    def __str__(self) -> str:
        return self.label or "endo(" + ", ".join(str(w) or "1" for w in self.images) + ")"


def apply_endo(phi: FreeGroupEndo, w: Word) -> Word:
    check_same_shape("endo/word rank", (phi.rank, w.rank))
    inv_images = None
    letters: list[Letter] = []
    for i, s in w.letters:
        img = phi.images[i - 1]
        if s > 0:
            letters.extend(img.letters)
        else:
            if inv_images is None:
                inv_images = [word_inv(x) for x in phi.images]
            letters.extend(inv_images[i - 1].letters)
    return Word(phi.rank, _reduce(letters))


def _substitute_images(phi: FreeGroupEndo, words: Sequence[Word]) -> tuple[Word, ...]:
    return tuple(apply_endo(phi, w) for w in words)


def compose_endos(phi: FreeGroupEndo, psi: FreeGroupEndo) -> FreeGroupEndo:
    """(phi psi)(g) = phi(psi(g))."""
    check_same_shape("endo rank", (phi.rank, psi.rank))
    images = _substitute_images(phi, psi.images)
    inverse = None
    if phi.has_inverse and psi.has_inverse:
        inverse = _substitute_images(endo_inverse(psi), phi.inverse)
    label = f"{phi.label}.{psi.label}" if phi.label and psi.label else ""
    return FreeGroupEndo(phi.rank, images, inverse, label)


def compose_all_endos(rank: int, endos: Sequence[FreeGroupEndo]) -> FreeGroupEndo:
    if not endos:
        return identity_endo(rank)
    acc = endos[0]
    for phi in endos[1:]:
        acc = compose_endos(acc, phi)
    return acc


def endo_inverse(phi: FreeGroupEndo) -> FreeGroupEndo:
    if phi.inverse is None:
        raise PreconditionError(f"{phi} has no certified inverse")
    label = f"{phi.label}^-1" if phi.label else ""
    return FreeGroupEndo(phi.rank, phi.inverse, phi.images, label)


def endo_commutator(phi: FreeGroupEndo, psi: FreeGroupEndo) -> FreeGroupEndo:
    """phi psi phi^-1 psi^-1."""
    out = compose_all_endos(phi.rank, [phi, psi, endo_inverse(phi), endo_inverse(psi)])
    if phi.label and psi.label:
        out = FreeGroupEndo(out.rank, out.images, out.inverse, f"[{phi.label},{psi.label}]")
    return out


def is_identity_endo(phi: FreeGroupEndo) -> bool:
    return all(w.letters == ((i, 1),) for i, w in enumerate(phi.images, start=1))


def certify_inverse(phi: FreeGroupEndo) -> bool:
    """phi o phi^-1 and phi^-1 o phi fix every generator."""
    if phi.inverse is None:
        return False
    inv = endo_inverse(phi)
    return is_identity_endo(compose_endos(phi, inv)) and is_identity_endo(compose_endos(inv, phi))


def abelianized(phi: FreeGroupEndo) -> GLMatrix:
    """|phi|; column i is the exponent-sum vector of phi(x_i)."""
    return GLMatrix.from_columns([abelianize(w) for w in phi.images])


# -----------------------------
# Constructors
# -----------------------------


def _gens(rank: int) -> list[Word]:
    return [generator(rank, i) for i in range(1, rank + 1)]


def _replace(rank: int, i: int, w: Word) -> tuple[Word, ...]:
    g = _gens(rank)
    g[i - 1] = w
    return tuple(g)


def _check_index(rank: int, *idx: int) -> None:
    for i in idx:
        if i < 1 or i > rank:
            raise PreconditionError(f"generator index {i} out of range 1..{rank}")


def identity_endo(rank: int) -> FreeGroupEndo:
    g = tuple(_gens(rank))
    return FreeGroupEndo(rank, g, g, "id")


def inner(g: Word) -> FreeGroupEndo:
    """iota(g): d -> g d g^-1."""
    n = g.rank
    gi = word_inv(g)
    images = tuple(word_product(n, [g, x, gi]) for x in _gens(n))
    inverse = tuple(word_product(n, [gi, x, g]) for x in _gens(n))
    return FreeGroupEndo(n, images, inverse, f"inner({g})")


def magnus_k(rank: int, i: int, l: int) -> FreeGroupEndo:
    """K_{i,l}: x_i -> x_l x_i x_l^-1."""
    _check_index(rank, i, l)
    if i == l:
        raise PreconditionError(f"K[{i},{l}] needs distinct indices")
    xi, xl = generator(rank, i), generator(rank, l)
    fwd = word_product(rank, [xl, xi, word_inv(xl)])
    back = word_product(rank, [word_inv(xl), xi, xl])
    return FreeGroupEndo(rank, _replace(rank, i, fwd), _replace(rank, i, back), f"K[{i},{l}]")


def magnus_k3(rank: int, i: int, l: int, s: int) -> FreeGroupEndo:
    """K_{i,l,s}: x_i -> x_i x_l x_s x_l^-1 x_s^-1, for i != l < s != i."""
    _check_index(rank, i, l, s)
    if not (i != l and l < s and s != i):
        raise PreconditionError(f"K[{i},{l},{s}] needs i != l < s != i")
    xi = generator(rank, i)
    c = commutator(generator(rank, l), generator(rank, s))
    fwd = word_product(rank, [xi, c])
    back = word_product(rank, [xi, word_inv(c)])
    return FreeGroupEndo(rank, _replace(rank, i, fwd), _replace(rank, i, back), f"K[{i},{l},{s}]")


def nielsen_swap(rank: int, i: int, j: int) -> FreeGroupEndo:
    _check_index(rank, i, j)
    g = _gens(rank)
    g[i - 1], g[j - 1] = g[j - 1], g[i - 1]
    return FreeGroupEndo(rank, tuple(g), tuple(g), f"P[{i},{j}]")


def nielsen_invert(rank: int, i: int) -> FreeGroupEndo:
    _check_index(rank, i)
    images = _replace(rank, i, generator(rank, i, -1))
    return FreeGroupEndo(rank, images, images, f"I[{i}]")


def nielsen_right(rank: int, i: int, j: int) -> FreeGroupEndo:
    """x_i -> x_i x_j."""
    _check_index(rank, i, j)
    if i == j:
        raise PreconditionError("nielsen_right needs distinct indices")
    xi, xj = generator(rank, i), generator(rank, j)
    return FreeGroupEndo(
        rank,
        _replace(rank, i, word_product(rank, [xi, xj])),
        _replace(rank, i, word_product(rank, [xi, word_inv(xj)])),
        f"R[{i},{j}]",
    )


def nielsen_left(rank: int, i: int, j: int) -> FreeGroupEndo:
    """x_i -> x_j x_i."""
    _check_index(rank, i, j)
    if i == j:
        raise PreconditionError("nielsen_left needs distinct indices")
    xi, xj = generator(rank, i), generator(rank, j)
    return FreeGroupEndo(
        rank,
        _replace(rank, i, word_product(rank, [xj, xi])),
        _replace(rank, i, word_product(rank, [word_inv(xj), xi])),
        f"L[{i},{j}]",
    )


def magnus_generators(n: int) -> list[FreeGroupEndo]:
    """K_{i,l} (i != l) followed by K_{i,l,s} (i != l < s != i), lexicographic."""
    out = [magnus_k(n, i, l) for i in range(1, n + 1) for l in range(1, n + 1) if i != l]
    out += [
        magnus_k3(n, i, l, s)
        for i in range(1, n + 1)
        for l in range(1, n + 1)
        for s in range(l + 1, n + 1)
        if i != l and s != i
    ]
    return out


def generator_library(kind: str, n: int) -> list[FreeGroupEndo]:
    if n < 2:
        raise PreconditionError(f"rank must be at least 2, got {n}")
    if kind == "magnus-K":
        return magnus_generators(n)
    if kind == "nielsen":
        out = [nielsen_swap(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        out += [nielsen_invert(n, i) for i in range(1, n + 1)]
        out += [nielsen_right(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        out += [nielsen_left(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        return out
    if kind == "inner":
        return [inner(generator(n, i)) for i in range(1, n + 1)]
    raise PreconditionError(f"unknown generator library {kind!r}; expected one of {', '.join(LIBRARY_KINDS)}")
