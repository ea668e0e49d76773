"""Tokenizer and parser for the word / expression grammar.

    expr  := term (('*' | '·')? term)*
    term  := atom ('^' INT)*
    atom  := NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')' | INT | 'e' | 'ε'

Products are juxtaposition or ``*``; ``^k`` takes a signed integer.  The
parser only builds syntax trees; typing happens in the evaluators
(:func:`parse_word` here, :mod:`holkit.expr` for the CLI).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .words import Alphabet, Word, invert, multiply, power


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[()*^,·ε]))")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


# --- syntax tree -------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    ident: str

    def __str__(self):
        return self.ident


@dataclass(frozen=True)
class Int:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class One:
    """The identity literal ``e``."""

    def __str__(self):
        return "e"


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int

    def __str__(self):
        inner = str(self.base)
        if isinstance(self.base, (Product, Power)):
            inner = f"({inner})"
        return f"{inner}^{self.exponent}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self):
        return " ".join(f"({f})" if isinstance(f, Product) else str(f) for f in self.factors)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple

    def __str__(self):
        return f"{self.func}(" + ", ".join(str(a) for a in self.args) + ")"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        if value is not None and tok.value != value:
            raise ParseError(f"expected {value!r}, found {tok.value!r}", self.text, tok.pos)
        self.i += 1
        return tok

    def expr(self):
        factors = [self.term()]
        while True:
            tok = self.peek()
            if tok is None or tok.value in (")", ","):
                break
            if tok.value in ("*", "·"):
                self.take()
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self):
        node = self.atom()
        while (tok := self.peek()) is not None and tok.value == "^":
            self.take()
            exp = self.take()
            if exp.kind != "int":
                raise ParseError("exponent must be an integer", self.text, exp.pos)
            node = Power(node, int(exp.value))
        return node

    def atom(self):
        tok = self.take()
        if tok.value == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "int":
            return Int(int(tok.value))
        if tok.value in ("e", "ε"):
            return One()
        if tok.kind == "name":
            nxt = self.peek()
            if nxt is not None and nxt.value == "(":
                self.take("(")
                args = [self.expr()]
                while self.peek() is not None and self.peek().value == ",":
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                return Call(tok.value, tuple(args))
            return Name(tok.value)
        raise ParseError(f"unexpected token {tok.value!r}", self.text, tok.pos)


def parse(text: str):
    """Parse ``text`` into a syntax tree."""
    p = _Parser(text)
    if p.peek() is None:
        raise ParseError("empty expression", text, 0)
    node = p.expr()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError(f"unexpected token {tok.value!r}", text, tok.pos)
    return node


def word_from_tree(node, alphabet: Alphabet, aliases: dict[str, int] | None = None) -> Word:
    """Evaluate a syntax tree as a word over ``alphabet``."""
    if isinstance(node, One):
        return alphabet.identity()
    if isinstance(node, Name):
        if aliases and node.ident in aliases:
            return alphabet.gen(aliases[node.ident])
        return alphabet.gen(node.ident)
    if isinstance(node, Power):
        return power(word_from_tree(node.base, alphabet, aliases), node.exponent)
    if isinstance(node, Product):
        out = alphabet.identity()
        for f in node.factors:
            out = multiply(out, word_from_tree(f, alphabet, aliases))
        return out
    raise ParseError(f"{node} is not a word")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse a word; relations ``u = v`` are not accepted here."""
    return word_from_tree(parse(text), alphabet)


def parse_relator(text: str, alphabet: Alphabet) -> Word:
    """Parse a relator, turning ``u = v`` into ``u v^-1``.

    Chains ``u = v = w`` are not supported; write one relation per line.
    """
    if "=" in text:
        parts = text.split("=")
        if len(parts) != 2:
            raise ParseError("one '=' per relation", text, text.index("="))
        lhs, rhs = (parse_word(p, alphabet) for p in parts)
        return multiply(lhs, invert(rhs))
    return parse_word(text, alphabet)
