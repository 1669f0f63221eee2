# magnus/freegroup.py
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import pyparsing as pp

from magnus.errors import GeneratorIndexError, WordSyntaxError, check_same_shape

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """Freely reduced word in F_n; letters are (generator index, +1 or -1)."""

    rank: int
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return word_mul(self, other)

    def __invert__(self) -> "Word":
        return word_inv(self)

    def __str__(self) -> str:
        return render_word(self)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for i, s in letters:
        if stack and stack[-1][0] == i and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((i, s))
    return tuple(stack)


def make_word(rank: int, letters: Iterable[Sequence[int]]) -> Word:
    out: list[Letter] = []
    for letter in letters:
        i, s = int(letter[0]), int(letter[1])
        if i < 1 or i > rank:
            raise GeneratorIndexError(f"generator x{i} out of range 1..{rank}")
        if s not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {s}")
        out.append((i, s))
    return Word(rank, _reduce(out))


def identity_word(rank: int) -> Word:
    return Word(rank, ())


def generator(rank: int, i: int, sign: int = 1) -> Word:
    return make_word(rank, [(i, sign)])


def word_mul(a: Word, b: Word) -> Word:
    check_same_shape("word rank", (a.rank, b.rank))
    return Word(a.rank, _reduce(a.letters + b.letters))


def word_product(rank: int, words: Iterable[Word]) -> Word:
    letters: list[Letter] = []
    for w in words:
        check_same_shape("word rank", (w.rank, rank))
        letters.extend(w.letters)
    return Word(rank, _reduce(letters))


def word_inv(a: Word) -> Word:
    return Word(a.rank, tuple((i, -s) for i, s in reversed(a.letters)))


def word_pow(a: Word, k: int) -> Word:
    base = a if k >= 0 else word_inv(a)
    return word_product(a.rank, [base] * abs(k))


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return word_product(a.rank, [a, b, word_inv(a), word_inv(b)])


def conjugate(g: Word, d: Word) -> Word:
    """g d g^-1."""
    return word_product(g.rank, [g, d, word_inv(g)])


def nested_commutator(rank: int, indices: Sequence[int]) -> Word:
    """Left-normed [[..[x_a, x_b], x_c].., x_z]; depth equals len(indices)."""
    if not indices:
        raise ValueError("nested_commutator needs at least one index")
    w = generator(rank, indices[0])
    for i in indices[1:]:
        w = commutator(w, generator(rank, i))
    return w


def abelianize(a: Word) -> tuple[int, ...]:
    """Exponent-sum vector [gamma] in H = Z^n."""
    v = [0] * a.rank
    for i, s in a.letters:
        v[i - 1] += s
    return tuple(v)


def render_word(a: Word) -> str:
    parts: list[str] = []
    run_i, run_e = 0, 0
    for i, s in a.letters:
        if i == run_i and (s > 0) == (run_e > 0):
            run_e += s
            continue
        if run_i:
            parts.append(f"x{run_i}" if run_e == 1 else f"x{run_i}^{run_e}")
        run_i, run_e = i, s
    if run_i:
        parts.append(f"x{run_i}" if run_e == 1 else f"x{run_i}^{run_e}")
    return "*".join(parts)


# -----------------------------
# Parser
# -----------------------------

_TERM_RE = re.compile(r"x(\d+)(?:\^([+-]?\d+))?")
# a term must end at a separator: "x1x2" is rejected
_TERM = pp.Regex(_TERM_RE.pattern + r"(?![\w^])")
_WORD = pp.Optional(_TERM + pp.ZeroOrMore(pp.Optional(pp.Suppress("*")) + _TERM))


def parse_word(text: str, rank: int) -> Word:
    """Parse "x1*x2^-1 x3^2" style words; the empty string is the identity."""
    try:
        tokens = _WORD.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise WordSyntaxError(
            f"cannot parse word: {e.msg} (terms are x<i> or x<i>^<k>, separated by '*' or spaces)", text, e.loc
        ) from None

    letters: list[Letter] = []
    for tok in tokens:
        m = _TERM_RE.fullmatch(tok)
        i = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        if i < 1 or i > rank:
            raise GeneratorIndexError(f"generator x{i} out of range 1..{rank} in {text!r}")
        letters.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return Word(rank, _reduce(letters))
