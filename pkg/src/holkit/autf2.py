"""Aut(F2): the standard generators p, x, y, τa, τb, the projection onto
GL2(Z), the normal form ``p^r u(x, y) x^(2s) w(τa, τb)``, ball enumeration and
element orders.

Generator images on ``F2 = <a, b>`` (forced by the conjugation relations via
``φ τ_w φ^-1 = τ_φ(w)``)::

    p: a -> b,     b -> a
    x: a -> b^-1,  b -> a
    y: a -> a b^-1, b -> a
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .morphisms import Automorphism, IntMatrix, abelianize, inner
from .presentations import Presentation
from .words import Alphabet, Word, extract_conjugator

F2 = Alphabet(("a", "b"))
XY = Alphabet(("x", "y"))
TAU = Alphabet(("ta", "tb"))

P_MAT = IntMatrix(((0, 1), (1, 0)))
X_MAT = IntMatrix(((0, 1), (-1, 0)))
Y_MAT = IntMatrix(((1, 1), (-1, 0)))

DEFAULT_BALL_CAP = 10**6


class BallLimitError(RuntimeError):
    pass


class NormalFormError(RuntimeError):
    """The residual after stripping the GL2 part was not inner."""


@dataclass(frozen=True)
class AutF2Basis:
    p: Automorphism
    x: Automorphism
    y: Automorphism
    ta: Automorphism
    tb: Automorphism

    @property
    def alphabet(self) -> Alphabet:
        return self.p.domain

    @property
    def identity(self) -> Automorphism:
        return Automorphism.identity(self.alphabet)

    @property
    def t1(self) -> Automorphism:
        """``x1 -> x1^-1, x2 -> x2``; equals ``p x``."""
        return self.p * self.x

    def as_dict(self) -> dict[str, Automorphism]:
        return {"p": self.p, "x": self.x, "y": self.y, "ta": self.ta, "tb": self.tb}

    def generators(self) -> list[Automorphism]:
        return [self.p, self.x, self.y, self.ta, self.tb]


@lru_cache(maxsize=None)
def basis(alphabet: Alphabet = F2) -> AutF2Basis:
    """The certified generators over a rank-2 alphabet (default ``<a, b>``)."""
    if alphabet.rank != 2:
        raise ValueError("Aut(F2) needs a rank 2 alphabet")
    a, b = alphabet.names
    p = Automorphism.from_strings(alphabet, [b, a], [b, a])
    x = Automorphism.from_strings(alphabet, [f"{b}^-1", a], [b, f"{a}^-1"])
    y = Automorphism.from_strings(alphabet, [f"{a} {b}^-1", a], [b, f"{a}^-1 {b}"])
    ta, tb = (inner(g) for g in alphabet.gens())
    return AutF2Basis(p, x, y, ta, tb)


AUT_F2_RELATIONS = (
    "x^4", "p^2", "(p x)^2",
    "(p y)^2 = tb",
    "x^2 = y^3 tb^-1 ta",
    "p^-1 ta p = tb", "x^-1 ta x = tb", "y^-1 ta y = tb",
    "p^-1 tb p = ta",
    "x^-1 tb x = ta^-1",
    "y^-1 tb y = ta^-1 tb",
)

GL2_RELATIONS = ("X^4", "P^2", "(P X)^2", "(P Y)^2", "X^2 = Y^3")


def aut_f2_presentation() -> Presentation:
    return Presentation.build("p x y ta tb", AUT_F2_RELATIONS, "Aut(F2)")


def gl2_presentation() -> Presentation:
    return Presentation.build("P X Y", GL2_RELATIONS, "GL2(Z)")


def project_gl2(f: Automorphism) -> IntMatrix:
    """Image in GL2(Z); the same as :func:`abelianize` for rank 2."""
    if f.domain.rank != 2:
        raise ValueError("project_gl2 needs an automorphism of F2")
    return abelianize(f)


# --- GL2(Z) decomposition ------------------------------------------------------
#
# SL2(Z) = Z4 *_Z2 Z6 with X of order 4, Y of order 6 and X^2 = Y^3 = -I central.
# Any word in X, Y is brought to an alternating word in x, y^{+-1} times a
# central power by a syllable stack; GL2 adds one leading P.

def _sl2_letters(M: IntMatrix) -> list[tuple[int, int]]:
    """Some word in X, Y (letters ``(0, ±1)`` for X, ``(1, ±1)`` for Y)
    whose product is ``M``, found by Euclid's algorithm on the first column."""
    # T = X Y^-1 (upper unipotent), L = X^-1 Y (lower unipotent)
    T_word = [(0, 1), (1, -1)]
    T_inv = [(1, 1), (0, -1)]
    L_word = [(0, -1), (1, 1)]
    L_inv = [(1, -1), (0, 1)]
    (a, b), (c, d) = M.rows
    prefix: list[tuple[int, int]] = []
    while c != 0:
        if a != 0 and abs(a) >= abs(c):
            q = a // c
            # row1 -= q row2, i.e. R <- T^-q R and M = ... T^q R
            a, b = a - q * c, b - q * d
            prefix += (T_word if q > 0 else T_inv) * abs(q)
        elif a != 0:
            q = c // a
            c, d = c - q * a, d - q * b
            prefix += (L_word if q > 0 else L_inv) * abs(q)
        else:
            # R <- X R swaps the rows up to sign; M = ... X^-1 R
            a, b, c, d = c, d, -a, -b
            prefix.append((0, -1))
    # now R = [[a, b], [0, a]] with a = ±1, R = a T^(a b)
    if a == -1:
        prefix += [(0, 1), (0, 1)]
    k = a * b
    prefix += (T_word if k > 0 else T_inv) * abs(k)
    return prefix


def _normalize_sl2(letters) -> tuple[tuple[int, ...], int]:
    """Alternating normal form ``(u, s)``: ``u`` uses only x, y, y^-1."""
    order = (4, 6)
    stack: list[list[int]] = []
    central = 0
    for g, e in letters:
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
        e %= order[g]
        if g == 0:
            central += e // 2
            e %= 2
        else:
            # y^2 = y^-1 z, y^3 = z, y^4 = y z with z = x^2 central
            central += {0: 0, 1: 0, 2: 1, 3: 1, 4: 1, 5: 0}[e]
            e = {0: 0, 1: 1, 2: 5, 3: 0, 4: 1, 5: 5}[e]
        if e:
            stack.append([g, e])
    tietze = []
    for g, e in stack:
        if g == 0:
            tietze.append(1)
        else:
            tietze.append(2 if e == 1 else -2)
    return tuple(tietze), central % 2


def _gl2_of_u(u: Word) -> IntMatrix:
    mats = {1: X_MAT, -1: ~X_MAT, 2: Y_MAT, -2: ~Y_MAT}
    out = IntMatrix.identity(2)
    for l in u.tietze:
        out = out * mats[l]
    return out


def gl2_evaluate(r: int, u: Word, s: int) -> IntMatrix:
    return (P_MAT ** r) * _gl2_of_u(u) * (X_MAT ** (2 * s))


def gl2_decompose(M: IntMatrix) -> tuple[int, Word, int]:
    """``(r, u, s)`` with ``M = P^r U(X, Y) X^(2s)``."""
    det = M.det()
    if det not in (1, -1) or M.n != 2:
        raise ValueError(f"{M} is not in GL2(Z)")
    r = 0 if det == 1 else 1
    N = P_MAT * M if r else M
    u_tz, s = _normalize_sl2(_sl2_letters(N))
    u = Word(XY, u_tz)
    if gl2_evaluate(r, u, s) != M:
        raise NormalFormError(f"decomposition of {M} does not evaluate back")
    return r, u, s


# --- the normal form -----------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    r: int
    u: Word
    s: int
    w: Word

    def evaluate(self, B: AutF2Basis) -> Automorphism:
        letters = {1: B.x, -1: ~B.x, 2: B.y, -2: ~B.y}
        out = B.p ** self.r
        for l in self.u.tietze:
            out = out * letters[l]
        out = out * (B.x ** (2 * self.s))
        taus = {1: B.ta, -1: ~B.ta, 2: B.tb, -2: ~B.tb}
        for l in self.w.tietze:
            out = out * taus[l]
        return out

    def to_json(self) -> dict:
        return {"r": self.r, "u": str(self.u), "s": self.s, "w": str(self.w)}

    def expression(self) -> str:
        """A spelling that the expression parser reads back."""
        parts = []
        if self.r:
            parts.append("p")
        if self.u:
            parts.append(str(self.u))
        if self.s:
            parts.append("x^2")
        if self.w:
            parts.append(str(self.w))
        return " ".join(parts) or "id"

    def __str__(self):
        u = str(self.u) if self.u else "ε"
        w = str(self.w) if self.w else "ε"
        return f"p^{self.r} · {u} · x^{2 * self.s} · {w}"


def _head(B: AutF2Basis, r: int, u: Word, s: int) -> Automorphism:
    return NormalForm(r, u, s, TAU.identity()).evaluate(B)


def normal_form(f: Automorphism) -> NormalForm:
    """Unique form ``p^r u(x,y) x^(2s) w(τa,τb)``: project to GL2(Z),
    decompose there, and read the remaining inner automorphism's conjugator."""
    B = basis(f.domain)
    r, u, s = gl2_decompose(project_gl2(f))
    g = ~_head(B, r, u, s) * f
    gens = f.domain.gens()
    c = extract_conjugator([(x, g(x)) for x in gens])
    if c is None:
        raise NormalFormError(f"residual {g} is not inner")
    return NormalForm(r, u, s, c.over(TAU))


# --- balls and orders ----------------------------------------------------------

def ball_cap() -> int:
    return int(os.environ.get("HOLKIT_MAX_BALL", DEFAULT_BALL_CAP))


class Ball:
    """The elements of word length at most ``radius``, in BFS order."""

    def __init__(self, symbols, symbol_names, radius):
        self.symbols = symbols
        self.symbol_names = symbol_names
        self.radius = radius
        self.elements: list = []
        self.sphere_sizes: list[int] = []
        self._parent: dict = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._parent

    def word_of(self, g) -> str:
        """A geodesic spelling of ``g`` in the generator names."""
        letters = []
        while True:
            parent, k = self._parent[g]
            if parent is None:
                break
            letters.append(self.symbol_names[k])
            g = parent
        return " ".join(reversed(letters)) or "e"


def enumerate_ball(generators, radius: int, cap: int | None = None, names=None) -> Ball:
    """All products of at most ``radius`` generators and inverses,
    deduplicated by group equality."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    cap = ball_cap() if cap is None else cap
    names = names or [f"g{i}" for i in range(len(generators))]
    symbols, symbol_names = [], []
    for g, n in zip(generators, names):
        for h, hn in ((g, n), (~g, f"{n}^-1")):
            if h not in symbols:
                symbols.append(h)
                symbol_names.append(hn)
    g0 = generators[0]
    identity = g0 * ~g0
    ball = Ball(symbols, symbol_names, radius)
    ball._parent[identity] = (None, -1)
    ball.elements.append(identity)
    ball.sphere_sizes.append(1)
    frontier = [identity]
    for _ in range(radius):
        nxt = []
        for h in frontier:
            for k, s in enumerate(symbols):
                g = h * s
                if g in ball._parent:
                    continue
                ball._parent[g] = (h, k)
                nxt.append(g)
                if len(ball._parent) > cap:
                    raise BallLimitError(f"ball exceeds the cap of {cap} elements")
        ball.elements.extend(nxt)
        ball.sphere_sizes.append(len(nxt))
        frontier = nxt
    return ball


class _BeyondCap:
    def __repr__(self):
        return "BEYOND_CAP"

    def __str__(self):
        return "beyond-cap"


BEYOND_CAP = _BeyondCap()


def _is_identity(g) -> bool:
    return g.is_identity()


def order_of(f, cap: int = 64):
    """Least ``k <= cap`` with ``f^k = 1``, else :data:`BEYOND_CAP`."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if isinstance(f, Automorphism) and f.domain.rank == 2:
        return _order_aut_f2(f, cap)
    acc = f
    for k in range(1, cap + 1):
        if _is_identity(acc):
            return k
        acc = acc * f
    return BEYOND_CAP


def _matrix_order(M: IntMatrix) -> int | None:
    # finite orders in GL2(Z) divide 4 or 6
    acc = M
    for k in range(1, 7):
        if acc.is_identity():
            return k
        acc = acc * M
    return None


def _order_aut_f2(f: Automorphism, cap: int):
    # the kernel of Aut(F2) -> GL2(Z) is Inn(F2) ≅ F2, which is torsion free:
    # if M has order m then f^m is inner, and f has order m or infinite order
    m = _matrix_order(project_gl2(f))
    if m is None:
        return BEYOND_CAP
    if not (f ** m).is_identity():
        return BEYOND_CAP
    return m if m <= cap else BEYOND_CAP
