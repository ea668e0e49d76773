"""Reduced words in finitely generated free groups.

Letters are stored in Tietze form: generator ``i`` (0-based) is the integer
``i + 1`` and its inverse is ``-(i + 1)``.  A :class:`Word` is always freely
reduced; raw letter sequences only exist at the :func:`reduce` boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class MalformedWordError(ValueError):
    """A letter refers to a generator outside the alphabet."""


class AlphabetMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("an alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"generator names must be distinct: {self.names}")
        for name in self.names:
            if not name.isalnum():
                raise ValueError(f"generator names must be alphanumeric: {name!r}")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        if len(names) == 1 and " " in names[0]:
            names = tuple(names[0].split())
        return cls(tuple(names))

    @classmethod
    def numbered(cls, rank: int, prefix: str = "x") -> "Alphabet":
        return cls(tuple(f"{prefix}{i}" for i in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MalformedWordError(f"unknown generator {name!r} in {self}") from None

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, name_or_index) -> "Word":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.rank:
            raise MalformedWordError(f"generator index {i} out of range for {self}")
        return Word(self, (i + 1,))

    def gens(self) -> list["Word"]:
        return [Word(self, (i + 1,)) for i in range(self.rank)]

    def parse(self, text: str) -> "Word":
        """Parse ``text`` in the word grammar (``a b^-1``, ``(a b)^3``, ``e``)."""
        from .grammar import parse_word

        return parse_word(text, self)

    def extend(self, name: str) -> "Alphabet":
        return Alphabet(self.names + (name,))

    def __str__(self):
        return "<" + ", ".join(self.names) + ">"


class Word:
    """A freely reduced word over an :class:`Alphabet`.

    Construct through :func:`reduce`, :meth:`Alphabet.parse` or
    :meth:`Alphabet.gen`; the bare constructor trusts its input.
    """

    __slots__ = ("alphabet", "tietze", "_hash")

    def __init__(self, alphabet: Alphabet, tietze: tuple[int, ...]):
        self.alphabet = alphabet
        self.tietze = tietze
        self._hash = None

    @property
    def letters(self) -> tuple[tuple[int, int], ...]:
        """The word as ``(generator_index, sign)`` pairs."""
        return tuple((abs(l) - 1, 1 if l > 0 else -1) for l in self.tietze)

    def __len__(self):
        return len(self.tietze)

    def __bool__(self):
        return bool(self.tietze)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.tietze == other.tietze and self.alphabet == other.alphabet

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.tietze)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def is_identity(self) -> bool:
        return not self.tietze

    def generators_used(self) -> set[int]:
        return {abs(l) - 1 for l in self.tietze}

    def over(self, alphabet: Alphabet) -> "Word":
        """The same letters read in another alphabet of at least this rank."""
        if self.tietze and max(abs(l) for l in self.tietze) > alphabet.rank:
            raise AlphabetMismatchError(f"{self} does not fit in {alphabet}")
        return Word(alphabet, self.tietze)

    def syllables(self) -> list[tuple[int, int]]:
        """Maximal powers ``(generator_index, exponent)``."""
        out: list[list[int]] = []
        for l in self.tietze:
            g, s = abs(l) - 1, (1 if l > 0 else -1)
            if out and out[-1][0] == g:
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, e) for g, e in out]

    def __str__(self):
        if not self.tietze:
            return "e"
        parts = []
        for g, e in self.syllables():
            name = self.alphabet.names[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __repr__(self):
        return f"Word({str(self)!r})"


def _check_alphabets(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(f"{u.alphabet} vs {v.alphabet}")


def reduce(alphabet: Alphabet, raw: Iterable) -> Word:
    """Freely reduce a raw letter sequence.

    ``raw`` holds either Tietze integers or ``(index, sign)`` pairs.
    """
    rank = alphabet.rank
    out: list[int] = []
    for item in raw:
        if isinstance(item, tuple):
            i, s = item
            if s not in (1, -1):
                raise MalformedWordError(f"sign must be +1 or -1, got {s}")
            l = (i + 1) * s
        else:
            l = item
        if l == 0 or abs(l) > rank:
            raise MalformedWordError(f"letter {item!r} not in {alphabet}")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return Word(alphabet, tuple(out))


def _join(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # both inputs reduced: cancellation happens only at the seam
    i, n, m = 0, len(a), len(b)
    while i < n and i < m and a[n - 1 - i] == -b[i]:
        i += 1
    return tuple(a[: n - i]) + tuple(b[i:])


def multiply(u: Word, v: Word) -> Word:
    _check_alphabets(u, v)
    return Word(u.alphabet, _join(u.tietze, v.tietze))


def invert(u: Word) -> Word:
    return Word(u.alphabet, tuple(-l for l in reversed(u.tietze)))


def power(u: Word, k: int) -> Word:
    base = u if k >= 0 else invert(u)
    out = u.alphabet.identity()
    for _ in range(abs(k)):
        out = multiply(out, base)
    return out


def conjugate(c: Word, g: Word) -> Word:
    """``c g c^-1``."""
    return multiply(multiply(c, g), invert(c))


def commutator(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``."""
    return multiply(multiply(u, v), invert(multiply(v, u)))


def substitute_tietze(tietze: Sequence[int], images, inverse_images) -> tuple[int, ...]:
    out: list[int] = []
    for l in tietze:
        piece = images[l - 1] if l > 0 else inverse_images[-l - 1]
        k, n = 0, len(piece)
        while k < n and out and out[-1] == -piece[k]:
            out.pop()
            k += 1
        out.extend(piece[k:] if k else piece)
    return tuple(out)


def substitute(u: Word, images: Sequence[Word]) -> Word:
    """Evaluate ``u`` with generator ``i`` replaced by ``images[i]``."""
    if len(images) < u.alphabet.rank and u.tietze:
        missing = [i for i in u.generators_used() if i >= len(images)]
        if missing:
            raise MalformedWordError(f"no image for generator {u.alphabet.names[missing[0]]}")
    if not images:
        return u
    target = images[0].alphabet
    for w in images:
        _check_alphabets(images[0], w)
    tz = substitute_tietze(
        u.tietze,
        [w.tietze for w in images],
        [invert(w).tietze for w in images],
    )
    return Word(target, tz)


def _conjugator_for(g: int, image: tuple[int, ...]) -> tuple[int, ...] | None:
    # the unique c0 not ending in g^{+-1} with image == c0 g c0^-1
    n = len(image)
    if n % 2 == 0:
        return None
    half = n // 2
    if image[half] != g:
        return None
    prefix, suffix = image[:half], image[half + 1:]
    if suffix != tuple(-l for l in reversed(prefix)):
        return None
    return prefix


def extract_conjugator(pairs: Sequence[tuple[Word, Word]]) -> Word | None:
    """Find the unique ``c`` with ``g' = c g c^-1`` for every ``(g, g')``.

    Each ``g`` must be a single positive generator.  Returns ``None`` if no
    such ``c`` exists.  For a single pair the answer is only defined up to
    powers of ``g``; the shortest choice is returned.
    """
    if not pairs:
        return None
    alphabet = pairs[0][1].alphabet
    prefixes = []
    for g, image in pairs:
        if len(g.tietze) != 1 or g.tietze[0] < 0:
            raise MalformedWordError(f"{g} is not a single generator")
        c0 = _conjugator_for(g.tietze[0], image.tietze)
        if c0 is None:
            return None
        prefixes.append(c0)
    # every solution has the form c0_i g_i^m; with two distinct generators
    # one of the exponents vanishes, so c is one of the first two prefixes
    for candidate in prefixes[:2]:
        c = Word(alphabet, candidate)
        if all(conjugate(c, g.over(alphabet)) == image for g, image in pairs):
            return c
    return None
