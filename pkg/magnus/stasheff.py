# magnus/stasheff.py
"""Full parenthesizations of 1..p+1 (associahedron vertices) and their signs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from magnus.errors import PreconditionError


@dataclass(frozen=True)
class ParenWord:
    """A full binary tree; a leaf when both children are None. size = number of internal nodes."""

    left: Optional["ParenWord"] = None
    right: Optional["ParenWord"] = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a ParenWord node has either two children or none")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def size(self) -> int:
        if self.is_leaf:
            return 0
        return self.left.size + self.right.size + 1

    def __str__(self) -> str:
        return render(self)


LEAF = ParenWord()


def pair(a: ParenWord, b: ParenWord) -> ParenWord:
    return ParenWord(a, b)


@lru_cache(maxsize=None)
def vertices(p: int) -> tuple[ParenWord, ...]:
    """S_p = disjoint union over q of S_q x S_{p-q-1}; S_0 = {leaf}."""
    if p < 0:
        raise PreconditionError(f"p must be non-negative, got {p}")
    if p == 0:
        return (LEAF,)
    out = []
    for q in range(p):
        for a in vertices(q):
            for b in vertices(p - q - 1):
                out.append(pair(a, b))
    return tuple(out)


def sgn(w: ParenWord) -> int:
    """sgn(leaf) = 1, sgn((w1, w2)) = (-1)^{|w2|} sgn(w1) sgn(w2)."""
    if w.is_leaf:
        return 1
    return (-1) ** w.right.size * sgn(w.left) * sgn(w.right)


def left_comb(p: int) -> ParenWord:
    """(((12)3)...(p+1))."""
    w = LEAF
    for _ in range(p):
        w = pair(w, LEAF)
    return w


def right_comb(p: int) -> ParenWord:
    w = LEAF
    for _ in range(p):
        w = pair(LEAF, w)
    return w


def render(w: ParenWord, start: int = 1) -> str:
    """Leaves numbered from start; '(12)', '((12)3)', '(1(23))'."""
    text, _ = _render(w, start)
    return text


def _render(w: ParenWord, k: int) -> tuple[str, int]:
    if w.is_leaf:
        return str(k), k + 1
    a, k = _render(w.left, k)
    b, k = _render(w.right, k)
    return f"({a}{b})", k
