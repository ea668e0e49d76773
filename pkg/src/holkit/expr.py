"""Typed evaluation of CLI expressions.

Values are free words, automorphisms, holomorph elements or tower
elements.  Products must be between values of the same group; words over
``a, b`` and over ``x1, x2`` are identified positionally when an operation
needs it, and automorphism constants follow the alphabet of their partner.

Constants: ``p x y ta tb t1 id``.  Functions: ``inner(w)``,
``hol(w, f)``, ``tower(n, w, lower)``.
"""
from __future__ import annotations

import re

from .autf2 import F2, basis
from .extensions import HolElement, TowerElement, tower_alphabet
from .grammar import Call, Int, Name, One, ParseError, Power, Product, parse
from .morphisms import Automorphism, inner
from .words import Alphabet, Word

_NUMBERED = re.compile(r"x(\d+)$")
CONSTANTS = ("p", "x", "y", "ta", "tb", "t1", "id")


class TypeMismatchError(TypeError):
    pass


class _Identity:
    """The literal ``e`` before it meets a typed partner."""

    def __str__(self):
        return "e"


IDENTITY = _Identity()


def type_name(v) -> str:
    if isinstance(v, Word):
        return f"F{v.alphabet.rank} word"
    if isinstance(v, Automorphism):
        return f"Aut(F{v.domain.rank})"
    if isinstance(v, HolElement):
        return f"Hol(F{v.alphabet.rank})"
    if isinstance(v, TowerElement):
        return f"H({v.level})"
    if isinstance(v, int):
        return "integer"
    return "identity"


def _is_numbered(alphabet: Alphabet) -> bool:
    return alphabet.names == Alphabet.numbered(alphabet.rank).names


def coerce_word(w: Word, alphabet: Alphabet) -> Word:
    if w.alphabet == alphabet:
        return w
    if set(w.alphabet.names) <= set(alphabet.names):
        return w.over(alphabet)
    if w.alphabet.rank == alphabet.rank:
        return Word(alphabet, w.tietze)
    if _is_numbered(w.alphabet) and _is_numbered(alphabet) and w.alphabet.rank < alphabet.rank:
        return Word(alphabet, w.tietze)
    raise TypeMismatchError(f"word {w} does not live in the free group on {alphabet}")


def coerce_aut(f: Automorphism, alphabet: Alphabet) -> Automorphism:
    if f.domain == alphabet:
        return f
    if f.domain.rank == alphabet.rank:
        return f.relabel(alphabet)
    raise TypeMismatchError(f"Aut(F{f.domain.rank}) used where Aut(F{alphabet.rank}) is needed")


def _word_union(u: Word, v: Word) -> Alphabet:
    a, b = u.alphabet, v.alphabet
    if a == b:
        return a
    if _is_numbered(a) and _is_numbered(b):
        return a if a.rank >= b.rank else b
    if a.rank == b.rank == 2:
        return a
    raise TypeMismatchError(f"words over {a} and {b} cannot be multiplied")


def mul(u, v):
    if u is IDENTITY:
        return v
    if v is IDENTITY:
        return u
    if isinstance(u, Word) and isinstance(v, Word):
        al = _word_union(u, v)
        return coerce_word(u, al) * coerce_word(v, al)
    if isinstance(u, Automorphism) and isinstance(v, Automorphism):
        return u * coerce_aut(v, u.domain)
    if isinstance(u, HolElement) and isinstance(v, HolElement):
        if u.alphabet.rank != v.alphabet.rank:
            raise TypeMismatchError(f"{type_name(u)} * {type_name(v)}")
        return u * HolElement(coerce_word(v.free, u.alphabet), coerce_aut(v.aut, u.alphabet))
    if isinstance(u, TowerElement) and isinstance(v, TowerElement):
        if u.level != v.level:
            raise TypeMismatchError(f"{type_name(u)} * {type_name(v)}")
        return u * v
    raise TypeMismatchError(f"cannot multiply {type_name(u)} by {type_name(v)}")


def inverse(v):
    if v is IDENTITY:
        return v
    if isinstance(v, int):
        raise TypeMismatchError("integers have no group inverse here")
    return ~v


def power(v, k: int):
    if isinstance(v, int):
        raise TypeMismatchError("integers cannot be raised to powers here")
    base = v if k >= 0 else inverse(v)
    out = IDENTITY
    for _ in range(abs(k)):
        out = mul(out, base)
    return out


class Evaluator:
    def __init__(self, alphabet: Alphabet = F2):
        self.alphabet = alphabet

    def constants(self) -> dict:
        B = basis(F2)
        return {**B.as_dict(), "t1": B.t1, "id": B.identity}

    def name(self, ident: str):
        consts = self.constants()
        if ident in consts:
            return consts[ident]
        if ident in ("a", "b"):
            return F2.gen(ident)
        m = _NUMBERED.match(ident)
        if m and int(m.group(1)) >= 1:
            i = int(m.group(1))
            return Alphabet.numbered(max(2, i)).gen(i - 1)
        raise ParseError(f"unknown name {ident!r}")

    def eval(self, node):
        if isinstance(node, One):
            return IDENTITY
        if isinstance(node, Int):
            return node.value
        if isinstance(node, Name):
            return self.name(node.ident)
        if isinstance(node, Power):
            return power(self.eval(node.base), node.exponent)
        if isinstance(node, Product):
            out = IDENTITY
            for f in node.factors:
                v = self.eval(f)
                if isinstance(v, int):
                    raise TypeMismatchError("an integer cannot be a factor of a product")
                out = mul(out, v)
            return out
        if isinstance(node, Call):
            return self.call(node.func, [self.eval(a) for a in node.args])
        raise ParseError(f"cannot evaluate {node}")

    def call(self, func: str, args: list):
        if func == "inner":
            (w,) = _arity(func, args, 1)
            w = _need_word(func, w)
            return inner(w)
        if func == "hol":
            w, f = _arity(func, args, 2)
            if f is IDENTITY:
                f = Automorphism.identity(F2)
            if not isinstance(f, Automorphism):
                raise TypeMismatchError(f"hol(w, f) needs an automorphism, got {type_name(f)}")
            w = _need_word(func, w, f.domain)
            return HolElement(coerce_word(w, f.domain), f)
        if func == "tower":
            n, w, lower = _arity(func, args, 3)
            if not isinstance(n, int) or n < 1:
                raise TypeMismatchError("tower(n, w, lower) needs an integer level n >= 1")
            w = coerce_word(_need_word(func, w, tower_alphabet(n)), tower_alphabet(n))
            if n == 1:
                if lower is IDENTITY:
                    lower = Automorphism.identity(tower_alphabet(1))
                if not isinstance(lower, Automorphism) or lower.domain.rank != 2:
                    raise TypeMismatchError(f"tower(1, ...) needs an Aut(F2) part, got {type_name(lower)}")
                return TowerElement(1, w, coerce_aut(lower, tower_alphabet(1)))
            if lower is IDENTITY:
                lower = TowerElement.identity(n - 1)
            if isinstance(lower, HolElement) and n == 2:
                lower = TowerElement.from_hol(lower)
            if isinstance(lower, Automorphism) and lower.domain.rank == 2:
                lower = TowerElement.of_aut(n - 1, lower)
            if not isinstance(lower, TowerElement) or lower.level != n - 1:
                raise TypeMismatchError(f"tower({n}, ...) needs an H({n - 1}) part, got {type_name(lower)}")
            return TowerElement(n, w, lower)
        raise ParseError(f"unknown function {func!r}")


def _arity(func: str, args: list, n: int) -> list:
    if len(args) != n:
        raise TypeMismatchError(f"{func} takes {n} argument(s), got {len(args)}")
    return args


def _need_word(func: str, w, alphabet: Alphabet | None = None) -> Word:
    if w is IDENTITY:
        return (alphabet or F2).identity()
    if not isinstance(w, Word):
        raise TypeMismatchError(f"{func} needs a word, got {type_name(w)}")
    return w


def evaluate(text: str):
    """Parse and evaluate ``text``; raises ``ParseError`` or ``TypeMismatchError``."""
    return Evaluator().eval(parse(text))

