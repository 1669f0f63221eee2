# magnus/lcs.py
"""Lower central series depth, graded images, the filtration A(m) and Johnson homomorphisms."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from magnus.autfn import FreeGroupEndo, apply_endo
from magnus.check import Check, all_of, compare
from magnus.errors import NotLieElement, PreconditionError
from magnus.expansion import MagnusExpansion, abelian_class, component, evaluate
from magnus.freegroup import Word, commutator, generator, nested_commutator, word_inv, word_mul
from magnus.johnson import johnson_p
from magnus.tensor import HomTensor, Key, Tensor, TruncatedSeries, _clean, hom_from_images, lowest_degree, tensor_mul

Depth = Union[int, str]

IDENTITY = "identity"


def beyond(N: int) -> str:
    return f">={N + 1}"


def lcs_degree(theta: MagnusExpansion, w: Word) -> Depth:
    """
    Largest m <= N with theta(w) in 1 + T-hat_m; "identity" for the empty word and
    ">=N+1" when theta(w) = 1 at this truncation.
    """
    if w.is_identity:
        return IDENTITY
    value = evaluate(theta, w)
    rest = TruncatedSeries(value.rank, value.N, {k: v for k, v in value.terms.items() if k})
    m = lowest_degree(rest)
    if m is None:
        return beyond(theta.N)
    return m


def depth_at_least(d: Depth, m: int) -> bool:
    if isinstance(d, int):
        return d >= m
    return True


# -----------------------------
# Lie elements
# -----------------------------


@lru_cache(maxsize=65536)
def _dynkin_monomial(key: Key) -> tuple[tuple[Key, int], ...]:
    """[...[[X_i1, X_i2], X_i3]..., X_im] expanded."""
    if len(key) <= 1:
        return ((key, 1),)
    head = dict(_dynkin_monomial(key[:-1]))
    j = key[-1]
    out: dict = defaultdict(int)
    for k, c in head.items():
        out[k + (j,)] += c
        out[(j,) + k] -= c
    return tuple(_clean(out).items())


def dynkin(t: Tensor) -> Tensor:
    out: dict = defaultdict(int)
    for key, c in t.terms.items():
        for k, d in _dynkin_monomial(key):
            out[k] += c * d
    return Tensor(t.rank, t.degree, _clean(out))


def is_lie_element(t: Union[Tensor, TruncatedSeries]) -> bool:
    """Dynkin criterion: D(t) = m t for homogeneous t of degree m >= 1."""
    if isinstance(t, TruncatedSeries):
        degrees = {len(k) for k in t.terms}
        if len(degrees) > 1:
            raise PreconditionError(f"Lie test needs a homogeneous element, got degrees {sorted(degrees)}")
        m = degrees.pop() if degrees else 1
        t = Tensor(t.rank, m, dict(t.terms))
    if t.degree < 1:
        raise PreconditionError("Lie test needs degree >= 1")
    m = t.degree
    return dynkin(t).terms == {k: m * v for k, v in t.terms.items()}


@dataclass(frozen=True)
class LieTensor:
    tensor: Tensor

    def __post_init__(self):
        if not is_lie_element(self.tensor):
            raise NotLieElement(f"degree-{self.tensor.degree} tensor fails the Dynkin test")

    @property
    def degree(self) -> int:
        return self.tensor.degree


def bracket(a: Tensor, b: Tensor) -> Tensor:
    return tensor_mul(a, b) - tensor_mul(b, a)


# -----------------------------
# Graded images
# -----------------------------


def graded_image(theta: MagnusExpansion, w: Word, m: int) -> LieTensor:
    """theta_m(w) for w in Gamma_m, certified Lie."""
    if m < 1 or m > theta.N:
        raise PreconditionError(f"degree {m} outside 1..{theta.N}")
    d = lcs_degree(theta.truncated(max(m, 2)), w)
    if not depth_at_least(d, m):
        raise PreconditionError(f"{w} has depth {d}, not in Gamma_{m}")
    return LieTensor(component(theta, w, m))


def check_bracket_recursion(theta: MagnusExpansion, g: Word, d: Word, m: int) -> Check:
    """theta_m([g, d]) = theta_{m-1}(g)[d] - [d]theta_{m-1}(g) for g in Gamma_{m-1}."""
    t = component(theta, g, m - 1)
    db = abelian_class(d)
    return compare(
        "lcs bracket recursion",
        component(theta, commutator(g, d), m),
        tensor_mul(t, db) - tensor_mul(db, t),
        g=g,
        d=d,
        m=m,
    )


def check_nested_depth(theta: MagnusExpansion, indices: tuple[int, ...]) -> Check:
    """The left-normed commutator of len(indices) generators has depth len(indices) and a Lie image."""
    w = nested_commutator(theta.rank, indices)
    depth = len(indices)
    checks = [compare("lcs depth", lcs_degree(theta, w), depth, word=w)]
    if checks[0].ok:
        expected = abelian_class(generator(theta.rank, indices[0]))
        for i in indices[1:]:
            expected = bracket(expected, abelian_class(generator(theta.rank, i)))
        image = graded_image(theta, w, depth)
        checks.append(compare("graded image", image.tensor, expected, word=w))
    return all_of("nested commutator depth", checks, indices=list(indices))


# -----------------------------
# A(m) and tau_m
# -----------------------------


def _drift(phi: FreeGroupEndo, i: int) -> Word:
    """x_i^-1 phi(x_i)."""
    x = generator(phi.rank, i)
    return word_mul(word_inv(x), apply_endo(phi, x))


def in_filtration_A(theta: MagnusExpansion, phi: FreeGroupEndo, m: int) -> bool:
    if m < 1 or m + 1 > theta.N:
        raise PreconditionError(f"A({m}) membership needs 1 <= m and m+1 <= N={theta.N}")
    low = theta.truncated(max(m + 1, 2))
    return all(depth_at_least(lcs_degree(low, _drift(phi, i)), m + 1) for i in range(1, phi.rank + 1))


def johnson_hom(theta: MagnusExpansion, phi: FreeGroupEndo, m: int) -> HomTensor:
    """tau_m(phi): x_i -> theta_{m+1}(x_i^-1 phi(x_i)), Lie-valued, for phi in A(m)."""
    if not in_filtration_A(theta, phi, m):
        raise PreconditionError(f"{phi} is not in A({m})")
    images = [LieTensor(component(theta, _drift(phi, i), m + 1)).tensor for i in range(1, phi.rank + 1)]
    return hom_from_images(theta.rank, m + 1, images)


def check_johnson_hom_agrees(theta: MagnusExpansion, phi: FreeGroupEndo, m: int) -> Check:
    """johnson_hom(phi, m) = tau^theta_m(phi) on A(m)."""
    return compare("johnson hom vs johnson map", johnson_hom(theta, phi, m), johnson_p(theta, phi, m), phi=phi, m=m)


def check_kernel_step(theta: MagnusExpansion, phi: FreeGroupEndo, m: int) -> Check:
    """If tau_m(phi) = 0 then phi is in A(m+1)."""
    tm = johnson_hom(theta, phi, m)
    if tm:
        return Check("johnson kernel", True, inputs={"phi": phi, "m": m, "vacuous": True})
    return compare("johnson kernel", in_filtration_A(theta, phi, m + 1), True, phi=phi, m=m)
