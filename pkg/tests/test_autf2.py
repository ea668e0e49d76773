import random

import pytest
from hypothesis import given, settings, strategies as st

from holkit.autf2 import (
    BEYOND_CAP,
    TAU,
    XY,
    BallLimitError,
    NormalForm,
    P_MAT,
    X_MAT,
    Y_MAT,
    aut_f2_presentation,
    basis,
    enumerate_ball,
    gl2_decompose,
    gl2_evaluate,
    normal_form,
    order_of,
    project_gl2,
)
from holkit.morphisms import IntMatrix, abelianize, inner
from holkit.presentations import Assignment
from holkit.words import Alphabet, Word

from oracles import normal_form_words

B = basis()
GENS = B.generators()
I2 = IntMatrix.identity(2)


def rand_aut(rng, length):
    f = B.identity
    for _ in range(length):
        g = rng.choice(GENS)
        f = f * (g if rng.random() < 0.5 else ~g)
    return f


def u_is_restricted(u: Word) -> bool:
    t = u.tietze
    if any(l == -1 for l in t):
        return False
    # alternating x and y^{+-1}: no two consecutive letters of the same kind
    return all(abs(t[i]) != abs(t[i + 1]) for i in range(len(t) - 1))


def test_projection_examples():
    assert project_gl2(B.tb).is_identity()
    assert project_gl2(B.identity).is_identity()
    assert project_gl2(B.x) == X_MAT
    assert (X_MAT ** 4).is_identity()
    assert project_gl2(B.p) == P_MAT and project_gl2(B.y) == Y_MAT


def test_projection_is_homomorphism_with_inner_kernel():
    rng = random.Random(0)
    for _ in range(500):
        f, g = rand_aut(rng, 6), rand_aut(rng, 6)
        assert project_gl2(f * g) == project_gl2(f) * project_gl2(g)
        assert project_gl2(f) == abelianize(f)
        c = Word(B.alphabet, tuple(rng.choice([1, -1, 2, -2]) for _ in range(5)))
        assert project_gl2(inner(c)).is_identity()


def test_gl2_decompose_examples():
    assert gl2_decompose(I2) == (0, XY.identity(), 0)
    assert gl2_decompose(-I2) == (0, XY.identity(), 1)
    r, u, s = gl2_decompose(X_MAT * Y_MAT)
    assert (r, str(u), s) == (0, "x y", 0)
    with pytest.raises(ValueError):
        gl2_decompose(IntMatrix.of([[2, 0], [0, 1]]))


def test_gl2_decompose_round_trip_and_restriction():
    rng = random.Random(1)
    mats = [P_MAT, X_MAT, Y_MAT, ~X_MAT, ~Y_MAT]
    for _ in range(2000):
        M = I2
        for _ in range(rng.randint(0, 14)):
            M = M * rng.choice(mats)
        r, u, s = gl2_decompose(M)
        assert gl2_evaluate(r, u, s) == M
        assert u_is_restricted(u) and r in (0, 1) and s in (0, 1)
        assert gl2_decompose(M) == (r, u, s)


def test_gl2_decompose_agrees_with_bfs_oracle():
    # every restricted (r, u, s) with |u| <= 7 is the unique form of its matrix
    seen = {}
    for r, u, s, w in normal_form_words(7, 0):
        M = gl2_evaluate(r, Word(XY, u), s)
        assert M not in seen, (seen.get(M), (r, u, s))
        seen[M] = (r, u, s)
        got = gl2_decompose(M)
        assert (got[0], got[1].tietze, got[2]) == (r, u, s)
    assert len(seen) > 250


def test_normal_form_examples():
    idf = normal_form(B.identity)
    assert (idf.r, idf.u, idf.s, idf.w) == (0, XY.identity(), 0, TAU.identity())
    nf = normal_form(B.ta)
    assert (nf.r, nf.u.tietze, nf.s, str(nf.w)) == (0, (), 0, "ta")
    nf = normal_form(B.ta * B.p)
    assert str(nf) == "p^1 · ε · x^0 · tb"
    assert nf.to_json() == {"r": 1, "u": "e", "s": 0, "w": "tb"}


def test_normal_form_round_trip():
    rng = random.Random(2)
    for _ in range(1000):
        f = rand_aut(rng, rng.randint(0, 12))
        nf = normal_form(f)
        assert nf.evaluate(B) == f
        assert u_is_restricted(nf.u)


def test_normal_form_uniqueness_under_relator_insertion():
    rng = random.Random(3)
    P = aut_f2_presentation()
    A = Assignment(B.as_dict())
    relators = [A.evaluate(r) for r in P.relators]
    assert all(r.is_identity() for r in relators)
    spell = {n: g for n, g in B.as_dict().items()}
    for _ in range(300):
        letters = [rng.choice(list(spell)) for _ in range(rng.randint(0, 10))]
        f = B.identity
        for l in letters:
            f = f * spell[l]
        # re-spell with a relator word spliced in letter by letter
        r = rng.choice(P.relators)
        cut = rng.randint(0, len(letters))
        g = B.identity
        for l in letters[:cut]:
            g = g * spell[l]
        for l in r.tietze:
            h = spell[P.generators[abs(l) - 1]]
            g = g * (h if l > 0 else ~h)
        for l in letters[cut:]:
            g = g * spell[l]
        assert normal_form(f) == normal_form(g)


def test_normal_forms_distinct_on_oracle_words():
    # distinct normal-form words give distinct automorphisms
    seen = {}
    for r, u, s, w in normal_form_words(4, 2):
        nf = NormalForm(r, Word(XY, u), s, Word(TAU, w))
        f = nf.evaluate(B)
        assert f not in seen
        seen[f] = nf
        assert normal_form(f) == nf


def test_kernel_is_inner():
    rng = random.Random(4)
    for _ in range(500):
        f = rand_aut(rng, 10)
        nf = normal_form(f)
        trivial_head = nf.r == 0 and not nf.u and nf.s == 0
        assert project_gl2(f).is_identity() == trivial_head


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), max_size=12))
def test_normal_form_property(letters):
    table = GENS + [~g for g in GENS]
    f = B.identity
    for i in letters:
        f = f * table[i]
    assert normal_form(f).evaluate(B) == f


def test_ball_examples():
    assert len(enumerate_ball([B.p], 0)) == 1
    assert len(enumerate_ball([B.p], 5)) == 2
    assert len(enumerate_ball([B.x], 10)) == 4
    assert len(enumerate_ball([B.p, B.x], 8)) == 8


def test_ball_monotone_and_deterministic():
    sizes = [len(enumerate_ball(GENS, r)) for r in range(4)]
    assert sizes == sorted(sizes) and sizes[0] == 1
    a = enumerate_ball(GENS, 3)
    b = enumerate_ball(GENS, 3)
    assert a.elements == b.elements


def test_ball_word_of_is_geodesic_spelling():
    ball = enumerate_ball(GENS, 3, names=["p", "x", "y", "ta", "tb"])
    table = {"p": B.p, "x": B.x, "y": B.y, "ta": B.ta, "tb": B.tb}
    for g in ball.elements[:200]:
        f = B.identity
        for tok in ball.word_of(g).split():
            if tok == "e":
                continue
            name, _, inv = tok.partition("^")
            f = f * (~table[name] if inv else table[name])
        assert f == g


def test_ball_cap(monkeypatch):
    with pytest.raises(BallLimitError):
        enumerate_ball(GENS, 4, cap=100)
    monkeypatch.setenv("HOLKIT_MAX_BALL", "50")
    with pytest.raises(BallLimitError):
        enumerate_ball(GENS, 3)


def test_order_examples():
    assert order_of(B.p) == 2
    assert order_of(B.x) == 4
    assert order_of(B.x ** 2) == 2
    assert order_of(B.ta, cap=50) is BEYOND_CAP
    assert order_of(B.x, cap=3) is BEYOND_CAP
    assert order_of(B.identity) == 1
    assert order_of(X_MAT) == 4
    with pytest.raises(ValueError):
        order_of(B.p, cap=0)


def test_order_fast_path_matches_iteration():
    rng = random.Random(5)

    def slow(f, cap):
        acc = f
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc * f
        return BEYOND_CAP

    for _ in range(300):
        f = rand_aut(rng, rng.randint(0, 6))
        assert order_of(f, 12) == slow(f, 12)


def test_basis_needs_rank_two():
    with pytest.raises(ValueError):
        basis(Alphabet.numbered(3))
