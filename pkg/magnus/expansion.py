# magnus/expansion.py
"""
Magnus expansions theta: F_n -> 1 + T-hat_1, given by theta(x_i) = 1 + X_i + xi_i.

The completed group ring is never built: kappa only shows up through the
algebra map theta o kappa : X_i -> theta(x_i) - 1, so that theta = (theta o kappa) o std.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from magnus.algmap import AlgebraMap, act_linear_series, apply_map, compose_maps, invert_map
from magnus.autfn import FreeGroupEndo, abelianized, endo_inverse
from magnus.errors import PreconditionError, ShapeMismatch, check_same_shape
from magnus.freegroup import Word, abelianize, word_mul
from magnus.tensor import (
    Tensor,
    Terms,
    TruncatedSeries,
    _invert,
    _mul,
    series_one,
    series_sub,
    series_truncate,
)


JOHNSON_CACHE_SIZE = 256


@dataclass(frozen=True)
class MagnusExpansion:
    rank: int
    N: int
    gens: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        if len(self.gens) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} generator values, got {len(self.gens)}")
        for g in self.gens:
            check_same_shape("expansion rank/N", (g.rank, self.rank), (g.N, self.N))

    def __call__(self, w: Word) -> TruncatedSeries:
        return evaluate(self, w)

    @cached_property
    def inverse_terms(self) -> list[Terms]:
        return [_invert(g.terms, self.N) for g in self.gens]

    @cached_property
    def kappa(self) -> AlgebraMap:
        return theta_kappa(self)

    @cached_property
    def kappa_inverse(self) -> AlgebraMap:
        return invert_map(self.kappa)

    @property
    def is_standard(self) -> bool:
        return all(g.terms == {(): 1, (i,): 1} for i, g in enumerate(self.gens, start=1))

    @property
    def xi(self) -> tuple[TruncatedSeries, ...]:
        """theta(x_i) - 1 - X_i."""
        return tuple(
            TruncatedSeries(self.rank, self.N, {k: v for k, v in g.terms.items() if len(k) >= 2}) for g in self.gens
        )

    @cached_property
    def _truncations(self) -> dict[int, "MagnusExpansion"]:
        return {}

    @cached_property
    def johnson_cache(self) -> dict:
        """Johnson maps already computed against this expansion; cleared once it holds JOHNSON_CACHE_SIZE."""
        return {}

    def truncated(self, N: int) -> "MagnusExpansion":
        if N == self.N:
            return self
        if N not in self._truncations:
            self._truncations[N] = truncate_expansion(self, N)
        return self._truncations[N]


def make_expansion(xi: Sequence[TruncatedSeries]) -> MagnusExpansion:
    """theta(x_i) = 1 + X_i + xi_i, each xi_i in T-hat_2."""
    if not xi:
        raise ShapeMismatch("make_expansion needs one series per generator")
    n, N = xi[0].rank, xi[0].N
    if len(xi) != n:
        raise ShapeMismatch(f"rank {n} needs {n} series, got {len(xi)}")
    if N < 2:
        raise ShapeMismatch(f"truncation must be at least 2, got {N}")
    gens = []
    for i, s in enumerate(xi, start=1):
        check_same_shape("xi rank/N", (s.rank, n), (s.N, N))
        low = [k for k in s.terms if len(k) < 2]
        if low:
            raise PreconditionError(f"xi_{i} must vanish in degrees 0 and 1, found terms {sorted(low)}")
        terms = dict(s.terms)
        terms[()] = 1
        terms[(i,)] = 1
        gens.append(TruncatedSeries(n, N, terms))
    return MagnusExpansion(n, N, tuple(gens))


def standard_expansion(n: int, N: int) -> MagnusExpansion:
    """std: x_i -> 1 + X_i."""
    if n < 1 or N < 2:
        raise ShapeMismatch(f"need rank >= 1 and N >= 2, got rank {n}, N {N}")
    return MagnusExpansion(n, N, tuple(TruncatedSeries(n, N, {(): 1, (i,): 1}) for i in range(1, n + 1)))


def truncate_expansion(theta: MagnusExpansion, N: int) -> MagnusExpansion:
    if N < 2 or N > theta.N:
        raise ShapeMismatch(f"cannot truncate an expansion at N={theta.N} to {N}")
    return MagnusExpansion(theta.rank, N, tuple(series_truncate(g, N) for g in theta.gens))


def evaluate(theta: MagnusExpansion, w: Word) -> TruncatedSeries:
    check_same_shape("expansion/word rank", (theta.rank, w.rank))
    N = theta.N
    acc: Terms = {(): 1}
    inv = None
    for i, s in w.letters:
        if s > 0:
            factor = theta.gens[i - 1].terms
        else:
            if inv is None:
                inv = theta.inverse_terms
            factor = inv[i - 1]
        acc = _mul(acc, factor, N)
    return TruncatedSeries(theta.rank, N, acc)


def component(theta: MagnusExpansion, w: Word, m: int) -> Tensor:
    """theta_m(w), the degree-m part of theta(w)."""
    if m < 0 or m > theta.N:
        raise PreconditionError(f"component degree {m} outside 0..{theta.N}")
    if m < theta.N:
        theta = theta.truncated(max(m, 2))
    return evaluate(theta, w).component(m)


def validate_expansion(theta: MagnusExpansion, samples: int = 8, seed: int = 0) -> bool:
    """Generators have constant 1 and linear part exactly X_i; homomorphism spot-checked."""
    for i, g in enumerate(theta.gens, start=1):
        if g.constant != 1:
            return False
        if g.component(1).terms != {(i,): 1}:
            return False
    if theta.N < 2:
        return False

    from magnus.sampling import random_word

    rng = random.Random(seed)
    for _ in range(samples):
        a = random_word(rng, theta.rank, 4)
        b = random_word(rng, theta.rank, 4)
        if evaluate(theta, word_mul(a, b)) != evaluate(theta, a) * evaluate(theta, b):
            return False
    return True


def theta_kappa(theta: MagnusExpansion) -> AlgebraMap:
    """theta o kappa: X_i -> theta(x_i) - 1."""
    one = series_one(theta.rank, theta.N)
    return AlgebraMap(theta.rank, theta.N, tuple(series_sub(g, one) for g in theta.gens))


def transition(theta1: MagnusExpansion, theta2: MagnusExpansion) -> AlgebraMap:
    """The unique U in IA(T-hat) with theta2 = U o theta1."""
    check_same_shape("expansion rank/N", (theta1.rank, theta2.rank), (theta1.N, theta2.N))
    return compose_maps(theta2.kappa, theta1.kappa_inverse)


def act_on_expansion(phi: FreeGroupEndo, theta: MagnusExpansion) -> MagnusExpansion:
    """phi . theta := |phi| o theta o phi^-1."""
    check_same_shape("endo/expansion rank", (phi.rank, theta.rank))
    inv = endo_inverse(phi)
    A = abelianized(phi)
    gens = tuple(act_linear_series(A, evaluate(theta, w)) for w in inv.images)
    return MagnusExpansion(theta.rank, theta.N, gens)


def apply_to_expansion(U: AlgebraMap, theta: MagnusExpansion) -> MagnusExpansion:
    """U o theta, for U in IA(T-hat)."""
    return MagnusExpansion(theta.rank, theta.N, tuple(apply_map(U, g) for g in theta.gens))


def abelian_class(w: Word) -> Tensor:
    """[w] in H as a degree-1 tensor."""
    return Tensor(w.rank, 1, {(i,): c for i, c in enumerate(abelianize(w), start=1) if c})
