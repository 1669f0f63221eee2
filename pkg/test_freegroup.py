from __future__ import annotations

import random

import pytest

from magnus.errors import GeneratorIndexError, WordSyntaxError
from magnus.freegroup import (
    abelianize,
    commutator,
    conjugate,
    generator,
    identity_word,
    make_word,
    nested_commutator,
    parse_word,
    render_word,
    word_inv,
    word_mul,
    word_pow,
)
from magnus.sampling import random_word


def test_free_reduction():
    w = make_word(2, [(1, 1), (2, 1), (2, -1), (1, -1), (2, 1)])
    assert w.letters == ((2, 1),)
    x1 = generator(2, 1)
    assert word_mul(x1, word_inv(x1)) == identity_word(2)


def test_make_word_rejects_bad_letters():
    with pytest.raises(GeneratorIndexError):
        make_word(2, [(3, 1)])
    with pytest.raises(ValueError):
        make_word(2, [(1, 2)])


def test_parse_and_render():
    w = parse_word("x1*x2^-1 x3^2", 3)
    assert w.letters == ((1, 1), (2, -1), (3, 1), (3, 1))
    assert render_word(w) == "x1*x2^-1*x3^2"
    assert parse_word("", 3).is_identity
    assert parse_word("x1 x1^-1", 2).is_identity


def test_parse_errors_carry_position():
    with pytest.raises(WordSyntaxError) as e:
        parse_word("x1*y2", 2)
    assert e.value.position >= 2
    with pytest.raises(GeneratorIndexError):
        parse_word("x4", 3)


def test_commutators_and_abelianization():
    x1, x2 = generator(2, 1), generator(2, 2)
    c = commutator(x1, x2)
    assert render_word(c) == "x1*x2*x1^-1*x2^-1"
    assert abelianize(c) == (0, 0)
    assert abelianize(word_pow(x1, -3)) == (-3, 0)
    assert abelianize(conjugate(x2, x1)) == (1, 0)
    assert len(nested_commutator(3, (1, 2, 3))) == 10


@pytest.mark.parametrize("text", ["x1x2", "x1^2x2", "x1**x2", "x1*"])
def test_terms_need_a_separator(text):
    with pytest.raises(WordSyntaxError) as e:
        parse_word(text, 2)
    assert "separated by" in str(e.value)


def _reduce_in_random_order(letters: list, rng: random.Random) -> tuple:
    letters = list(letters)
    while True:
        spots = [
            k
            for k in range(len(letters) - 1)
            if letters[k][0] == letters[k + 1][0] and letters[k][1] == -letters[k + 1][1]
        ]
        if not spots:
            return tuple(letters)
        k = rng.choice(spots)
        del letters[k : k + 2]


def test_reduction_is_confluent(rng):
    for _ in range(100):
        raw = [(rng.randint(1, 2), rng.choice((1, -1))) for _ in range(rng.randint(0, 12))]
        expected = make_word(2, raw).letters
        for _ in range(3):
            assert _reduce_in_random_order(raw, rng) == expected


def test_group_laws_on_random_words(rng):
    for _ in range(100):
        a, b, c = (random_word(rng, 3, 6) for _ in range(3))
        assert word_mul(word_mul(a, b), c) == word_mul(a, word_mul(b, c))
        assert word_inv(word_inv(a)) == a
        assert word_mul(a, word_inv(a)) == identity_word(3)
        assert word_inv(word_mul(a, b)) == word_mul(word_inv(b), word_inv(a))


def test_parse_inverts_render(rng):
    for _ in range(100):
        w = random_word(rng, 4, 8)
        assert parse_word(render_word(w), 4) == w
