import random

import pytest

from holkit.grammar import ParseError, parse, parse_relator, parse_word
from holkit.words import Alphabet

AB = Alphabet.of("a", "b")


def test_word_grammar():
    assert str(parse_word("a b^-1 (a b)^2", AB)) == "a b^-1 a b a b"
    assert parse_word("a*b", AB) == parse_word("a b", AB) == parse_word("a · b", AB)
    assert parse_word("e", AB).is_identity()
    assert parse_word("ε", AB).is_identity()
    assert parse_word("a^0", AB).is_identity()


def test_relator_is_lhs_times_inverse_rhs():
    assert parse_relator("a b = b a", AB) == parse_word("a b a^-1 b^-1", AB)
    with pytest.raises(ParseError):
        parse_relator("a = b = a", AB)


@pytest.mark.parametrize("bad, pos", [("a ^", 3), ("(a b", 4), ("a $ b", 2), ("a^b", 2), ("a)", 1)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(ParseError) as info:
        parse(bad)
    assert info.value.pos == pos


def test_empty_input_rejected():
    with pytest.raises(ParseError):
        parse("   ")


def _random_expr(rng, depth=0):
    kind = rng.randint(0, 5 if depth < 3 else 1)
    if kind == 0:
        return rng.choice(["a", "b", "p", "x", "y", "ta", "tb", "x1", "x3"])
    if kind == 1:
        return "e"
    if kind == 2:
        return f"{_random_expr(rng, depth + 1)}^{rng.randint(-4, 4)}"
    if kind == 3:
        return "(" + " ".join(_random_expr(rng, depth + 1) for _ in range(rng.randint(2, 3))) + ")"
    if kind == 4:
        return f"inner({_random_expr(rng, depth + 1)})"
    return f"hol({_random_expr(rng, depth + 1)}, {_random_expr(rng, depth + 1)})"


def test_print_parse_round_trip_on_corpus():
    rng = random.Random(0)
    corpus = ["p x y^-1", "inner(a b) ta", "tower(2, x3, tower(1, x1 x2, p))", "hol(a, p)", "(p x)^2"]
    corpus += [_random_expr(rng) for _ in range(200)]
    for text in corpus:
        tree = parse(text)
        assert parse(str(tree)) == tree, text
