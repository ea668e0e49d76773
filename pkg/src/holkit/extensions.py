"""Holomorphs of free groups, the embedding ``E: Hol(G) -> Aut(G * Z)`` and the
tower ``H(n) = F(n+1) ⋊ E(H(n-1))`` with ``H(1) = Hol(F2)``.

Free products ``G * Z`` are realized by appending one generator to the
alphabet.  In the tower the level-``n`` free factor is ``<x1, ..., x(n+1)>``.

``E(g)`` fixes ``G`` and sends the new letter ``z`` to ``g z g^-1``.  With
composition ``(f * g)(w) = f(g(w))`` this reverses products of elements of
``G``: ``E(a) E(b) = E(b a)``.  The image ``E(Hol(G))`` is still a group,
and its product in holomorph coordinates is :func:`image_multiply`.  Tower
elements keep their lower part in these coordinates, so lower parts
multiply as the automorphisms they stand for.
"""
from __future__ import annotations

import random
from functools import cached_property
from typing import Sequence

from .morphisms import Automorphism, Endomorphism
from .words import Alphabet, AlphabetMismatchError, Word, invert, multiply


class LevelMismatchError(ValueError):
    pass


def _extend_alphabet(alphabet: Alphabet, new_letter: str | None) -> Alphabet:
    if new_letter is None:
        new_letter = f"x{alphabet.rank + 1}" if alphabet.names == Alphabet.numbered(alphabet.rank).names else "z"
    return alphabet.extend(new_letter)


def _embed(free: Word, aut: Automorphism, new_letter: str | None = None) -> Automorphism:
    """``E(g, α)``: ``γ -> α(γ)`` on the old generators, ``z -> g z g^-1``."""
    big = _extend_alphabet(aut.domain, new_letter)
    z = (big.rank,)
    g = free.tietze
    gi = tuple(-l for l in reversed(g))
    fwd = list(aut.forward.tietze_images) + [g + z + gi]
    # E(h)^-1 = E(h^-1) with h^-1 = (α^-1(g^-1), α^-1)
    h = aut.backward.apply_tietze(gi)
    hi = tuple(-l for l in reversed(h))
    bwd = list(aut.backward.tietze_images) + [h + z + hi]
    return Automorphism(Endomorphism(big, fwd), Endomorphism(big, bwd), check=False)


class HolElement:
    """An element ``(g, α)`` of ``Hol(G) = G ⋊ Aut(G)`` for a free group ``G``.

    Multiplication is ``(g1, α1)(g2, α2) = (g1 α1(g2), α1 α2)``.
    """

    __slots__ = ("free", "aut")

    def __init__(self, free: Word, aut: Automorphism):
        if free.alphabet != aut.domain:
            raise AlphabetMismatchError(f"{free.alphabet} vs {aut.domain}")
        self.free = free
        self.aut = aut

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "HolElement":
        return cls(alphabet.identity(), Automorphism.identity(alphabet))

    @property
    def alphabet(self) -> Alphabet:
        return self.free.alphabet

    def __mul__(self, other: "HolElement") -> "HolElement":
        return hol_multiply(self, other)

    def __invert__(self) -> "HolElement":
        return hol_inverse(self)

    def inverse(self) -> "HolElement":
        return hol_inverse(self)

    def __eq__(self, other):
        if not isinstance(other, HolElement):
            return NotImplemented
        return self.free == other.free and self.aut == other.aut

    def __hash__(self):
        return hash((self.free, self.aut))

    def is_identity(self) -> bool:
        return self.free.is_identity() and self.aut.is_identity()

    def __str__(self):
        return f"({self.free}; {self.aut})"

    __repr__ = __str__


def hol_multiply(u: HolElement, v: HolElement) -> HolElement:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(f"{u.alphabet} vs {v.alphabet}")
    return HolElement(multiply(u.free, u.aut(v.free)), u.aut * v.aut)


def hol_inverse(u: HolElement) -> HolElement:
    back = ~u.aut
    return HolElement(back(invert(u.free)), back)


def image_multiply(u, v):
    """Coordinates of ``E(u) ∘ E(v)``.

    For holomorph or tower coordinates ``(g, ℓ)`` this is
    ``(E(ℓ1)(g2) g1, ℓ1 ∘ ℓ2)``; automorphisms simply compose.
    """
    if isinstance(u, Automorphism):
        return u * v
    if isinstance(u, HolElement):
        return HolElement(multiply(u.aut(v.free), u.free), u.aut * v.aut)
    _check_levels(u, v)
    return TowerElement(u.level, multiply(u.action(v.free), u.free), image_multiply(u.lower, v.lower))


def embed_E(h: HolElement, new_letter: str | None = None) -> Automorphism:
    """The automorphism ``E(h)`` of ``G * <z>``.

    ``E(g, α) = E(g) ∘ E(α)`` where ``E(α)`` applies ``α`` on ``G`` and fixes
    ``z`` while ``E(g)`` fixes ``G`` and sends ``z -> g z g^-1``.  The new
    letter is ``x(n+1)`` for alphabets ``x1..xn`` and ``z`` otherwise.
    """
    return _embed(h.free, h.aut, new_letter)


# --- the tower ---------------------------------------------------------------

def tower_alphabet(level: int) -> Alphabet:
    """Alphabet of the free factor ``F(level+1)``."""
    return Alphabet.numbered(level + 1)


class TowerElement:
    """An element ``(w, ℓ)`` of ``H(level)``.

    ``free`` is a word over ``x1..x(level+1)``; ``lower`` is a
    ``TowerElement`` of level ``level-1``, or at level 1 an automorphism of
    ``F2 = <x1, x2>`` (so level 1 is ``Hol(F2)`` itself).  ``lower`` stands
    for the automorphism ``action``; products are
    ``(w1, ℓ1)(w2, ℓ2) = (w1 ℓ1(w2), image_multiply(ℓ1, ℓ2))``.
    """

    def __init__(self, level: int, free: Word, lower):
        if level < 1:
            raise LevelMismatchError("tower levels start at 1")
        if free.alphabet.rank != level + 1:
            raise LevelMismatchError(f"level {level} needs a rank {level + 1} word, got {free}")
        if level == 1:
            if not isinstance(lower, Automorphism) or lower.domain.rank != 2:
                raise LevelMismatchError("level 1 lower part must be an automorphism of F2")
        elif not isinstance(lower, TowerElement) or lower.level != level - 1:
            raise LevelMismatchError(f"level {level} needs a level {level - 1} lower part")
        alphabet = tower_alphabet(level)
        if free.alphabet != alphabet:
            free = free.over(alphabet)
        if level == 1 and lower.domain != tower_alphabet(1):
            lower = lower.relabel(tower_alphabet(1))
        self.level = level
        self.free = free
        self.lower = lower

    @classmethod
    def identity(cls, level: int) -> "TowerElement":
        if level == 1:
            return cls(1, tower_alphabet(1).identity(), Automorphism.identity(tower_alphabet(1)))
        return cls(level, tower_alphabet(level).identity(), cls.identity(level - 1))

    @classmethod
    def from_hol(cls, h: HolElement) -> "TowerElement":
        a = tower_alphabet(1)
        return cls(1, h.free.over(a), h.aut.relabel(a))

    def to_hol(self) -> HolElement:
        if self.level != 1:
            raise LevelMismatchError("only level 1 is Hol(F2)")
        return HolElement(self.free, self.lower)

    @classmethod
    def free_generator(cls, level: int, i: int) -> "TowerElement":
        """``x_i`` (1-based) as an element of ``H(level)``."""
        return cls(level, tower_alphabet(level).gen(i - 1), _identity_lower(level))

    @classmethod
    def of_word(cls, level: int, w: Word) -> "TowerElement":
        return cls(level, w.over(tower_alphabet(level)), _identity_lower(level))

    @classmethod
    def of_aut(cls, level: int, aut: Automorphism) -> "TowerElement":
        """Lift ``α ∈ Aut(F2)`` to ``H(level)`` through the sections."""
        elem = cls(1, tower_alphabet(1).identity(), aut.relabel(tower_alphabet(1)))
        while elem.level < level:
            elem = section(elem)
        return elem

    @cached_property
    def action(self) -> Automorphism:
        """The automorphism of ``F(level+1)`` through which ``lower`` acts."""
        if self.level == 1:
            return self.lower
        return self.lower.embedding

    @cached_property
    def embedding(self) -> Automorphism:
        """``E(self)``, an automorphism of ``F(level+2)``."""
        return _embed(self.free, self.action)

    def __mul__(self, other: "TowerElement") -> "TowerElement":
        return tower_multiply(self, other)

    def __invert__(self) -> "TowerElement":
        return tower_inverse(self)

    def inverse(self) -> "TowerElement":
        return tower_inverse(self)

    def __pow__(self, k: int) -> "TowerElement":
        base = self if k >= 0 else ~self
        out = TowerElement.identity(self.level)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.level == other.level and self.free == other.free and self.lower == other.lower

    def __hash__(self):
        return hash((self.level, self.free, self.lower))

    def is_identity(self) -> bool:
        return self.free.is_identity() and self.lower.is_identity()

    def to_json(self) -> dict:
        lower = (
            {"images": [str(w) for w in self.lower.images],
             "inverse_images": [str(w) for w in self.lower.backward.images]}
            if self.level == 1 else self.lower.to_json()
        )
        return {"level": self.level, "free": str(self.free), "lower": lower}

    @classmethod
    def from_json(cls, data: dict) -> "TowerElement":
        level = data["level"]
        alphabet = tower_alphabet(level)
        lower = data["lower"]
        if level == 1:
            lower = Automorphism.from_strings(alphabet, lower["images"], lower["inverse_images"])
        else:
            lower = cls.from_json(lower)
        return cls(level, alphabet.parse(data["free"]), lower)

    def __str__(self):
        lower = f"[{self.lower}]" if self.level == 1 else str(self.lower)
        return f"({self.free}; {lower})"

    __repr__ = __str__


def _identity_lower(level: int):
    if level == 1:
        return Automorphism.identity(tower_alphabet(1))
    return TowerElement.identity(level - 1)


def _check_levels(u: TowerElement, v: TowerElement) -> None:
    if not isinstance(u, TowerElement) or not isinstance(v, TowerElement):
        raise TypeError("tower arithmetic needs tower elements")
    if u.level != v.level:
        raise LevelMismatchError(f"levels {u.level} and {v.level}")


def tower_multiply(u: TowerElement, v: TowerElement) -> TowerElement:
    _check_levels(u, v)
    return TowerElement(u.level, multiply(u.free, u.action(v.free)), image_multiply(u.lower, v.lower))


def tower_inverse(u: TowerElement) -> TowerElement:
    # inverses agree for the group law and for image_multiply
    lower_inv = ~u.lower
    back = ~u.action
    return TowerElement(u.level, back(invert(u.free)), lower_inv)


def tower_action(g: TowerElement, w: Word) -> Word:
    """Apply ``E(g)`` for ``g ∈ H(n-1)`` to ``w ∈ F(n+1)``."""
    if w.alphabet.rank != g.level + 2:
        raise LevelMismatchError(f"level {g.level} acts on rank {g.level + 2}, got {w.alphabet}")
    return g.embedding(w.over(tower_alphabet(g.level + 1)))


def project(u: TowerElement) -> TowerElement:
    """``(w, ℓ) -> ℓ``; a homomorphism onto ``E(H(n-1))``, whose product is
    :func:`image_multiply`."""
    if u.level < 2:
        raise LevelMismatchError("project needs level >= 2")
    return u.lower


def section(v: TowerElement) -> TowerElement:
    return TowerElement(v.level + 1, tower_alphabet(v.level + 1).identity(), v)


def tower_generators(level: int, base_auts: Sequence[Automorphism]) -> list[TowerElement]:
    """Free generators of every level plus the lifted ``Aut(F2)`` generators."""
    gens = []
    for m in range(1, level + 1):
        for i in range(1, m + 2):
            elem = TowerElement.free_generator(m, i)
            while elem.level < level:
                elem = section(elem)
            gens.append(elem)
    gens.extend(TowerElement.of_aut(level, a) for a in base_auts)
    return gens


def random_word(rng: random.Random, alphabet: Alphabet, max_length: int) -> Word:
    length = rng.randint(0, max_length)
    out: list[int] = []
    while len(out) < length:
        l = rng.choice([1, -1]) * rng.randint(1, alphabet.rank)
        if out and out[-1] == -l:
            continue
        out.append(l)
    return Word(alphabet, tuple(out))


def random_aut(rng: random.Random, gens: Sequence[Automorphism], max_length: int) -> Automorphism:
    out = Automorphism.identity(gens[0].domain)
    for _ in range(rng.randint(0, max_length)):
        g = rng.choice(gens)
        out = out * (g if rng.random() < 0.5 else ~g)
    return out


def random_tower_element(
    rng: random.Random, level: int, base_auts: Sequence[Automorphism], max_length: int = 6
) -> TowerElement:
    """A seeded random element: a uniform random word at every level over a
    random automorphism of ``F2`` at the bottom."""
    a = tower_alphabet(1)
    elem = TowerElement(
        1,
        random_word(rng, a, max_length),
        random_aut(rng, [g.relabel(a) for g in base_auts], max_length),
    )
    for m in range(2, level + 1):
        elem = TowerElement(m, random_word(rng, tower_alphabet(m), max_length), elem)
    return elem
