import random

import pytest

from holkit.autf2 import basis
from holkit.morphisms import (
    Automorphism,
    Endomorphism,
    IntMatrix,
    NotAnInverseError,
    abelianize,
    compose,
    equal,
    inner,
    verify_automorphism,
)
from holkit.words import Alphabet, AlphabetMismatchError, reduce

AB = Alphabet.of("a", "b")
X2 = Alphabet.numbered(2)
B = basis(AB)


def random_aut(rng, n):
    out = B.identity
    for _ in range(n):
        g = rng.choice(B.generators())
        out = out * (g if rng.random() < 0.5 else ~g)
    return out


def test_compose_x_with_itself():
    xx = compose(B.x, B.x)
    assert [str(w) for w in xx.images] == ["a^-1", "b^-1"]


def test_compose_identity_neutral():
    f = B.y
    assert compose(B.identity, f) == f == compose(f, B.identity)


def test_t1_commutes_with_inner_x2():
    t1 = Automorphism.from_strings(X2, ["x1^-1", "x2"], ["x1^-1", "x2"])
    t2 = inner(X2.gen(1))
    assert compose(t1, t2) == compose(t2, t1)


def test_composition_order_is_f_after_g():
    # y(p(a)) = y(b) = a, whereas p(y(a)) = p(a b^-1) = b a^-1
    assert str((B.y * B.p)(AB.gen(0))) == "a"
    assert str((B.p * B.y)(AB.gen(0))) == "b a^-1"


def test_equal_examples():
    assert equal(B.identity, B.identity)
    assert equal(B.x ** 4, B.identity)
    assert not equal(B.x ** 2, B.identity)
    with pytest.raises(AlphabetMismatchError):
        equal(B.x, basis(X2).x)


def test_inner_examples():
    a, b = AB.gens()
    assert [str(w) for w in inner(a).images] == ["a", "a b a^-1"]
    assert inner(AB.identity()).is_identity()
    assert inner(a * b) == inner(a) * inner(b)


def test_verify_automorphism():
    p = Endomorphism.from_strings(AB, "b", "a")
    assert verify_automorphism(p, p) == B.p
    sq = Endomorphism.from_strings(AB, "a^2", "b")
    with pytest.raises(NotAnInverseError) as info:
        verify_automorphism(sq, Endomorphism.from_strings(AB, "a", "b"))
    assert info.value.generator == "a"
    a = AB.gen(0)
    assert verify_automorphism(inner(a).forward, inner(~a).forward) == B.ta


def test_wrong_inverse_names_generator():
    y = Endomorphism.from_strings(AB, "a b^-1", "a")
    with pytest.raises(NotAnInverseError):
        verify_automorphism(y, Endomorphism.from_strings(AB, "b", "b^-1 a"))


def test_abelianize_examples():
    I = IntMatrix.identity(2)
    assert abelianize(B.ta) == I and abelianize(B.identity) == I
    X, Y = abelianize(B.x), abelianize(B.y)
    assert X == IntMatrix.of([[0, 1], [-1, 0]])
    assert Y == IntMatrix.of([[1, 1], [-1, 0]])
    assert X * X == -I == Y ** 3


def test_abelianize_is_homomorphism_on_1000_pairs():
    rng = random.Random(0)
    for _ in range(1000):
        f, g = random_aut(rng, 6), random_aut(rng, 6)
        assert abelianize(f * g) == abelianize(f) * abelianize(g)
        assert abelianize(f).det() in (1, -1)


def test_certified_automorphisms_closed_under_compose_and_invert():
    rng = random.Random(1)
    for _ in range(300):
        f, g = random_aut(rng, 5), random_aut(rng, 5)
        h = f * g
        verify_automorphism(h.forward, h.backward)
        verify_automorphism((~h).forward, (~h).backward)


def test_inner_abelianizes_to_identity():
    rng = random.Random(2)
    for _ in range(500):
        w = reduce(AB, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 15))])
        assert abelianize(inner(w)).is_identity()


def test_int_matrix_inverse_and_higher_rank():
    M = IntMatrix.of([[2, 1], [1, 1]])
    assert (M * ~M).is_identity()
    N = IntMatrix.of([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    assert N.det() == 1
    assert (N * ~N).is_identity()
    with pytest.raises(ValueError):
        ~IntMatrix.of([[2, 0], [0, 1]])
