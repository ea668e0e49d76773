"""Endomorphisms and automorphisms of free groups given by generator images.

Composition is ``(f * g)(w) = f(g(w))`` everywhere in this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import (
    Alphabet,
    AlphabetMismatchError,
    Word,
    conjugate,
    invert,
    substitute_tietze,
)


class NotAnInverseError(ValueError):
    def __init__(self, generator: str, got: Word, side: str):
        self.generator = generator
        self.got = got
        super().__init__(f"{side} composition sends {generator} to {got}, not to itself")


class Endomorphism:
    __slots__ = ("domain", "tietze_images", "_inverse_images", "_hash")

    def __init__(self, domain: Alphabet, images: Sequence[Word | tuple[int, ...]]):
        if len(images) != domain.rank:
            raise ValueError(f"need {domain.rank} images, got {len(images)}")
        tz = []
        for w in images:
            if isinstance(w, Word):
                if w.alphabet != domain:
                    raise AlphabetMismatchError(f"image {w} not over {domain}")
                w = w.tietze
            tz.append(tuple(w))
        self.domain = domain
        self.tietze_images = tuple(tz)
        self._inverse_images = None
        self._hash = None

    @classmethod
    def from_strings(cls, domain: Alphabet, *images: str) -> "Endomorphism":
        return cls(domain, [domain.parse(s) for s in images])

    @classmethod
    def identity(cls, domain: Alphabet) -> "Endomorphism":
        return cls(domain, [(i + 1,) for i in range(domain.rank)])

    @property
    def images(self) -> tuple[Word, ...]:
        return tuple(Word(self.domain, t) for t in self.tietze_images)

    def _inv(self):
        if self._inverse_images is None:
            self._inverse_images = tuple(
                tuple(-l for l in reversed(t)) for t in self.tietze_images
            )
        return self._inverse_images

    def apply_tietze(self, tietze: Sequence[int]) -> tuple[int, ...]:
        return substitute_tietze(tietze, self.tietze_images, self._inv())

    def __call__(self, w: Word) -> Word:
        if w.alphabet != self.domain:
            raise AlphabetMismatchError(f"{w} is not over {self.domain}")
        return Word(self.domain, self.apply_tietze(w.tietze))

    def __mul__(self, other: "Endomorphism") -> "Endomorphism":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.domain == other.domain and self.tietze_images == other.tietze_images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.tietze_images)
        return self._hash

    def is_identity(self) -> bool:
        return all(t == (i + 1,) for i, t in enumerate(self.tietze_images))

    def relabel(self, alphabet: Alphabet) -> "Endomorphism":
        """The same map read over another alphabet of equal rank."""
        if alphabet.rank != self.domain.rank:
            raise AlphabetMismatchError(f"rank {alphabet.rank} != {self.domain.rank}")
        return Endomorphism(alphabet, self.tietze_images)

    def __str__(self):
        return ", ".join(
            f"{n} -> {w}" for n, w in zip(self.domain.names, self.images)
        )

    def __repr__(self):
        return f"Endomorphism({self})"


def compose(f, g):
    """``f ∘ g``: first ``g``, then ``f``.  Works for endo- and automorphisms."""
    if isinstance(f, Automorphism) and isinstance(g, Automorphism):
        return Automorphism(compose(f.forward, g.forward), compose(g.backward, f.backward), check=False)
    if isinstance(f, Automorphism):
        f = f.forward
    if isinstance(g, Automorphism):
        g = g.forward
    if f.domain != g.domain:
        raise AlphabetMismatchError(f"{f.domain} vs {g.domain}")
    return Endomorphism(f.domain, [f.apply_tietze(t) for t in g.tietze_images])


def equal(f, g) -> bool:
    f = f.forward if isinstance(f, Automorphism) else f
    g = g.forward if isinstance(g, Automorphism) else g
    if f.domain != g.domain:
        raise AlphabetMismatchError(f"{f.domain} vs {g.domain}")
    return f.tietze_images == g.tietze_images


class Automorphism:
    """An endomorphism together with a two-sided inverse.

    Equality and hashing look at ``forward`` only, which is exact for free
    groups.
    """

    __slots__ = ("forward", "backward")

    def __init__(self, forward: Endomorphism, backward: Endomorphism, check: bool = True):
        if check:
            _certify(forward, backward)
        self.forward = forward
        self.backward = backward

    @classmethod
    def identity(cls, domain: Alphabet) -> "Automorphism":
        e = Endomorphism.identity(domain)
        return cls(e, e, check=False)

    @classmethod
    def from_strings(cls, domain: Alphabet, images: Sequence[str], inverse_images: Sequence[str]):
        return verify_automorphism(
            Endomorphism.from_strings(domain, *images),
            Endomorphism.from_strings(domain, *inverse_images),
        )

    @property
    def domain(self) -> Alphabet:
        return self.forward.domain

    @property
    def images(self) -> tuple[Word, ...]:
        return self.forward.images

    def __call__(self, w: Word) -> Word:
        return self.forward(w)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(
            compose(self.forward, other.forward),
            compose(other.backward, self.backward),
            check=False,
        )

    def __invert__(self) -> "Automorphism":
        return Automorphism(self.backward, self.forward, check=False)

    def inverse(self) -> "Automorphism":
        return ~self

    def __pow__(self, k: int) -> "Automorphism":
        base = self if k >= 0 else ~self
        out = Automorphism.identity(self.domain)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.forward == other.forward

    def __hash__(self):
        return hash(self.forward)

    def is_identity(self) -> bool:
        return self.forward.is_identity()

    def relabel(self, alphabet: Alphabet) -> "Automorphism":
        return Automorphism(self.forward.relabel(alphabet), self.backward.relabel(alphabet), check=False)

    def __str__(self):
        return str(self.forward)

    def __repr__(self):
        return f"Automorphism({self})"


def _certify(f: Endomorphism, g: Endomorphism) -> None:
    if f.domain != g.domain:
        raise AlphabetMismatchError(f"{f.domain} vs {g.domain}")
    for side, h in (("forward∘backward", compose(f, g)), ("backward∘forward", compose(g, f))):
        for i, t in enumerate(h.tietze_images):
            if t != (i + 1,):
                raise NotAnInverseError(f.domain.names[i], Word(f.domain, t), side)


def verify_automorphism(f: Endomorphism, candidate_inverse: Endomorphism) -> Automorphism:
    """Certify ``candidate_inverse`` as a two-sided inverse of ``f``.

    Raises :class:`NotAnInverseError` naming the first generator that is not
    fixed by one of the two compositions.
    """
    _certify(f, candidate_inverse)
    return Automorphism(f, candidate_inverse, check=False)


def inner(c: Word) -> Automorphism:
    """Conjugation ``g -> c g c^-1``."""
    alphabet = c.alphabet
    ci = invert(c)
    fwd = Endomorphism(alphabet, [conjugate(c, g) for g in alphabet.gens()])
    bwd = Endomorphism(alphabet, [conjugate(ci, g) for g in alphabet.gens()])
    return Automorphism(fwd, bwd, check=False)


# --- integer matrices --------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows
        ))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-v for v in r) for r in self.rows))

    def det(self) -> int:
        if self.n == 1:
            return self.rows[0][0]
        if self.n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        import sympy

        return int(sympy.Matrix(self.rows).det())

    def __invert__(self) -> "IntMatrix":
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix with determinant {d} is not invertible over Z")
        if self.n == 2:
            (a, b), (c, e) = self.rows
            return IntMatrix(((e * d, -b * d), (-c * d, a * d)))
        import sympy

        inv = sympy.Matrix(self.rows).inv()
        return IntMatrix.of(inv.tolist())

    def inverse(self) -> "IntMatrix":
        return ~self

    def __pow__(self, k: int) -> "IntMatrix":
        base = self if k >= 0 else ~self
        out = IntMatrix.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.n)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def abelianize(f) -> IntMatrix:
    """Matrix whose column ``j`` is the exponent-sum vector of image ``j``."""
    if isinstance(f, Automorphism):
        f = f.forward
    n = f.domain.rank
    cols = []
    for t in f.tietze_images:
        v = [0] * n
        for l in t:
            v[abs(l) - 1] += 1 if l > 0 else -1
        cols.append(v)
    return IntMatrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
