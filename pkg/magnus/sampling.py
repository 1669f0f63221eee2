# magnus/sampling.py
"""Seeded random inputs for the verification suites and tests."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from magnus.autfn import (
    FreeGroupEndo,
    compose_all_endos,
    endo_commutator,
    endo_inverse,
    generator_library,
    magnus_generators,
)
from magnus.cochain import SemidirectElement
from magnus.expansion import MagnusExpansion, make_expansion
from magnus.freegroup import Letter, Word, _reduce
from magnus.tensor import TruncatedSeries, _clean


def trial_rng(seed: int, suite: str, index: int) -> random.Random:
    """Independent of the order in which trials are scheduled."""
    return random.Random(f"{seed}:{suite}:{index}")


def random_word(rng: random.Random, n: int, max_len: int) -> Word:
    """Reduced word of length at most max_len."""
    letters: list[Letter] = [(rng.randint(1, n), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    return Word(n, _reduce(letters))


def random_nonempty_word(rng: random.Random, n: int, max_len: int) -> Word:
    while True:
        w = random_word(rng, n, max(max_len, 1))
        if not w.is_identity:
            return w


def _coefficient(rng: random.Random, fractions: bool) -> int | Fraction:
    c = rng.choice((-2, -1, 1, 2, 3))
    if fractions and rng.random() < 0.3:
        return Fraction(c, rng.choice((2, 3)))
    return c


def random_series(
    rng: random.Random, n: int, N: int, min_degree: int = 0, terms: int = 6, fractions: bool = True
) -> TruncatedSeries:
    out: dict = {}
    for _ in range(terms):
        d = rng.randint(min_degree, N)
        key = tuple(rng.randint(1, n) for _ in range(d))
        out[key] = out.get(key, 0) + _coefficient(rng, fractions)
    return TruncatedSeries(n, N, _clean(out))


def random_expansion(rng: random.Random, n: int, N: int, terms: int = 4, fractions: bool = True) -> MagnusExpansion:
    """theta(x_i) = 1 + X_i + a random element of T-hat_2."""
    return make_expansion([random_series(rng, n, N, min_degree=2, terms=terms, fractions=fractions) for _ in range(n)])


def _random_product(rng: random.Random, n: int, pool: list[FreeGroupEndo], length: int) -> FreeGroupEndo:
    factors = []
    for _ in range(length):
        phi = rng.choice(pool)
        factors.append(phi if rng.random() < 0.5 else endo_inverse(phi))
    return compose_all_endos(n, factors)


def random_endo(
    rng: random.Random, n: int, length: int = 3, kinds: Sequence[str] = ("nielsen", "magnus-K")
) -> FreeGroupEndo:
    """A product of generators from the given libraries and their inverses; carries a certified inverse."""
    pool = [phi for kind in kinds for phi in generator_library(kind, n)]
    return _random_product(rng, n, pool, rng.randint(1, max(length, 1)))


def random_ia_map(rng: random.Random, n: int, length: int = 3) -> FreeGroupEndo:
    return _random_product(rng, n, magnus_generators(n), rng.randint(1, max(length, 1)))


def random_a2(rng: random.Random, n: int, length: int = 2) -> FreeGroupEndo:
    """A commutator of two IA maps, hence in A(2)."""
    return endo_commutator(random_ia_map(rng, n, length), random_ia_map(rng, n, length))


def random_ia_word(rng: random.Random, n: int, length: int = 4) -> str:
    parts = []
    for _ in range(rng.randint(1, max(length, 1))):
        label = rng.choice(magnus_generators(n)).label
        e = rng.choice((1, 1, -1, 2))
        parts.append(label if e == 1 else f"{label}^{e}")
    return "*".join(parts)


def random_semidirect(rng: random.Random, n: int, max_len: int, endo_length: int = 2) -> SemidirectElement:
    return SemidirectElement(random_word(rng, n, max_len), random_endo(rng, n, endo_length))
