import random

import pytest

from holkit.autf2 import basis, enumerate_ball
from holkit.extensions import (
    HolElement,
    LevelMismatchError,
    TowerElement,
    embed_E,
    image_multiply,
    project,
    random_tower_element,
    section,
    tower_action,
    tower_alphabet,
)
from holkit.morphisms import Automorphism, Endomorphism
from holkit.words import Alphabet, Word, reduce

AB = Alphabet.of("a", "b")
X2 = Alphabet.numbered(2)
B = basis(X2)
BAB = basis(AB)
ID_AB = Automorphism.identity(AB)


def rword(rng, alphabet, n):
    return reduce(alphabet, [rng.choice([1, -1]) * rng.randint(1, alphabet.rank) for _ in range(rng.randint(0, n))])


def rhol(rng):
    a = ID_AB
    for _ in range(rng.randint(0, 4)):
        g = rng.choice(BAB.generators())
        a = a * (g if rng.random() < 0.5 else ~g)
    return HolElement(rword(rng, AB, 5), a)


def extend_fixing(aut, big):
    """``aut`` on the old letters, the new letter fixed."""
    n = aut.domain.rank
    imgs = [Word(big, t) for t in aut.forward.tietze_images] + [big.gen(n)]
    back = [Word(big, t) for t in aut.backward.tietze_images] + [big.gen(n)]
    return Automorphism(Endomorphism(big, imgs), Endomorphism(big, back))


def conj_new_letter(g, big):
    """Fix the old letters, ``z -> g z g^-1``."""
    n = big.rank - 1
    g = Word(big, g.tietze)
    z = big.gen(n)
    fwd = big.gens()[:n] + [g * z * ~g]
    bwd = big.gens()[:n] + [~g * z * g]
    return Automorphism(Endomorphism(big, fwd), Endomorphism(big, bwd))


def oracle_embedding(elem: TowerElement) -> Automorphism:
    """E(g) rebuilt as E(free) ∘ E(action) from the definition."""
    big = tower_alphabet(elem.level + 1)
    action = elem.lower if elem.level == 1 else oracle_embedding(elem.lower)
    return conj_new_letter(elem.free, big) * extend_fixing(action.relabel(tower_alphabet(elem.level)), big)


def test_hol_examples():
    a, b = AB.gens()
    ea = HolElement(a, ID_AB)
    eb = HolElement(b, ID_AB)
    assert ea * eb == HolElement(a * b, ID_AB)
    assert HolElement(AB.identity(), BAB.p) * ea == HolElement(b, BAB.p)


def test_hol_inverse_and_associativity():
    rng = random.Random(0)
    e = HolElement.identity(AB)
    for _ in range(1000):
        u, v, w = rhol(rng), rhol(rng), rhol(rng)
        assert u * ~u == e == ~u * u
        assert (u * v) * w == u * (v * w)


def test_embed_examples():
    a = AB.gen(0)
    E = embed_E(HolElement(a, ID_AB))
    assert [str(w) for w in E.images] == ["a", "b", "a z a^-1"]
    assert embed_E(HolElement.identity(AB)).is_identity()
    Ep = embed_E(HolElement(AB.identity(), BAB.p))
    assert [str(w) for w in Ep.images] == ["b", "a", "z"]


def test_embed_is_multiplicative_for_image_product():
    rng = random.Random(1)
    for _ in range(1000):
        u, v = rhol(rng), rhol(rng)
        assert embed_E(image_multiply(u, v)) == embed_E(u) * embed_E(v)
        # pure automorphisms compose the same way under both products
        assert embed_E(HolElement(AB.identity(), u.aut * v.aut)) == embed_E(
            HolElement(AB.identity(), u.aut)) * embed_E(HolElement(AB.identity(), v.aut))


def test_embed_reverses_products_in_free_part():
    a, b = (HolElement(g, ID_AB) for g in AB.gens())
    assert embed_E(a) * embed_E(b) == embed_E(b * a)
    assert embed_E(a) * embed_E(b) != embed_E(a * b)


def test_embed_injective_on_radius_4_ball():
    gens = [HolElement(g, ID_AB) for g in AB.gens()] + [HolElement(AB.identity(), f) for f in (BAB.p, BAB.x, BAB.y)]
    ball = enumerate_ball(gens, 4)
    images = {embed_E(h) for h in ball}
    assert len(images) == len(ball)


def test_tower_identity_and_action_examples():
    rng = random.Random(2)
    v = random_tower_element(rng, 3, B.generators())
    assert TowerElement.identity(3) * v == v == v * TowerElement.identity(3)
    # level-2 element with lower part (x1, id): x3 -> x1 x3 x1^-1
    g = TowerElement(1, X2.gen(0), B.identity)
    elem = TowerElement(2, tower_alphabet(2).identity(), g)
    assert str(elem.action(tower_alphabet(2).gen(2))) == "x1 x3 x1^-1"
    g2 = TowerElement(1, X2.gen(1), B.identity)
    assert str(tower_action(g2, tower_alphabet(2).gen(2))) == "x2 x3 x2^-1"
    assert str(tower_action(g2, tower_alphabet(2).gen(0))) == "x1"
    free_part_trivial = TowerElement(1, X2.identity(), B.p)
    assert str(tower_action(free_part_trivial, tower_alphabet(2).gen(2))) == "x3"


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_tower_associativity(level):
    rng = random.Random(level)
    for _ in range(250):
        u, v, w = (random_tower_element(rng, level, B.generators(), 8) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert (u * ~u).is_identity()


@pytest.mark.parametrize("level", [1, 2, 3])
def test_action_agrees_with_recursive_oracle(level):
    rng = random.Random(10 + level)
    for _ in range(100):
        g = random_tower_element(rng, level, B.generators(), 5)
        assert g.embedding == oracle_embedding(g)


@pytest.mark.parametrize("level", [2, 3, 4])
def test_action_is_a_homomorphism(level):
    rng = random.Random(20 + level)
    for _ in range(100):
        u, v = (random_tower_element(rng, level, B.generators(), 5) for _ in range(2))
        assert (u * v).action == u.action * v.action
        assert image_multiply(u, v).embedding == u.embedding * v.embedding


@pytest.mark.parametrize("level", [1, 2, 3])
def test_action_fixes_lower_subgroup_and_conjugates_new_letter(level):
    rng = random.Random(30 + level)
    big = tower_alphabet(level + 1)
    top = big.rank
    for _ in range(100):
        g = random_tower_element(rng, level, B.generators(), 5)
        E = g.embedding
        for i in range(top - 1):
            assert top not in {abs(l) for l in E.forward.tietze_images[i]}
        img = E.forward.tietze_images[top - 1]
        mid = len(img) // 2
        assert img[mid] == top and img[mid + 1:] == tuple(-l for l in reversed(img[:mid]))
        assert all(abs(l) != top for l in img[:mid])


def test_project_and_section():
    rng = random.Random(3)
    for level in (2, 3):
        for _ in range(100):
            u, v = (random_tower_element(rng, level, B.generators(), 6) for _ in range(2))
            assert project(u * v) == image_multiply(project(u), project(v))
            assert project(section(project(u))) == project(u)
    k = TowerElement.free_generator(2, 3)
    assert project(k).is_identity()
    with pytest.raises(LevelMismatchError):
        project(TowerElement.identity(1))


def test_level_mismatch():
    with pytest.raises(LevelMismatchError):
        TowerElement.identity(2) * TowerElement.identity(3)
    with pytest.raises(LevelMismatchError):
        TowerElement(2, tower_alphabet(1).identity(), TowerElement.identity(1))
    with pytest.raises(LevelMismatchError):
        tower_action(TowerElement.identity(1), tower_alphabet(3).gen(0))


def test_tower_json_round_trip():
    rng = random.Random(4)
    for level in (1, 2, 3):
        g = random_tower_element(rng, level, B.generators(), 6)
        assert TowerElement.from_json(g.to_json()) == g


def test_hol_and_level_one_agree():
    rng = random.Random(5)
    for _ in range(200):
        u, v = rhol(rng), rhol(rng)
        tu, tv = TowerElement.from_hol(u), TowerElement.from_hol(v)
        uv = u * v
        assert (tu * tv).to_hol() == HolElement(Word(X2, uv.free.tietze), uv.aut.relabel(X2))


@pytest.mark.parametrize("level", [1, 2, 3])
def test_image_product_is_associative_with_group_inverse(level):
    rng = random.Random(40 + level)
    for _ in range(100):
        u, v, w = (random_tower_element(rng, level, B.generators(), 5) for _ in range(3))
        assert image_multiply(image_multiply(u, v), w) == image_multiply(u, image_multiply(v, w))
        assert image_multiply(u, ~u).is_identity()
