"""Finitely presented groups as data, checked against concrete realizations.

A realization (:class:`Assignment`) sends each generator to an element of a
"computable group": anything supporting ``*``, ``~`` (inverse), ``==`` and
``is_identity()``.  Words, automorphisms, holomorph and tower elements and
integer matrices all qualify.

Relations ``u = v`` are stored as the relator ``u v^-1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .grammar import ParseError, parse_relator, parse_word
from .words import Alphabet, Word, invert, multiply, commutator


class UnassignedGeneratorError(KeyError):
    pass


class UncoveredGeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    name: str = ""

    def __post_init__(self):
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise ValueError(f"relator {r} is not over {self.alphabet}")

    @classmethod
    def build(cls, generators: Sequence[str] | str, relations: Iterable[str | Word], name: str = ""):
        """Build from generator names and relations in the word grammar."""
        if isinstance(generators, str):
            generators = generators.split()
        alphabet = Alphabet(tuple(generators))
        rels = []
        for r in relations:
            if isinstance(r, Word):
                rels.append(r.over(alphabet) if r.alphabet != alphabet else r)
            else:
                rels.append(parse_relator(r, alphabet))
        return cls(alphabet, tuple(rels), name)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def with_relators(self, relators: Iterable[Word], name: str | None = None) -> "Presentation":
        return Presentation(self.alphabet, tuple(relators), self.name if name is None else name)

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        lines.append("gens: " + " ".join(self.generators) + ";")
        lines.extend(str(r) for r in self.relators)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        """Read the text format: ``gens: a b t;`` then one relator per line."""
        name = ""
        gens = None
        rels = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if gens is None and not name:
                    name = line[1:].strip()
                continue
            if gens is None:
                if not line.startswith("gens:"):
                    raise ParseError(f"line {lineno}: expected 'gens:' header")
                body = line[len("gens:"):].strip().rstrip(";")
                gens = Alphabet(tuple(body.split()))
                continue
            rels.append(parse_relator(line, gens))
        if gens is None:
            raise ParseError("missing 'gens:' header")
        return cls(gens, tuple(rels), name)


def relation(lhs: Word, rhs: Word) -> Word:
    return multiply(lhs, invert(rhs))


def comm(u: Word, v: Word) -> Word:
    return commutator(u, v)


class Assignment(Mapping):
    """Generator name -> element of one computable group."""

    def __init__(self, images: Mapping[str, Any], identity: Any = None):
        self._images = dict(images)
        if identity is None:
            if not self._images:
                raise ValueError("an empty assignment needs an explicit identity")
            g = next(iter(self._images.values()))
            identity = g * ~g
        self.identity = identity

    def __getitem__(self, name):
        try:
            return self._images[name]
        except KeyError:
            raise UnassignedGeneratorError(name) from None

    def __iter__(self):
        return iter(self._images)

    def __len__(self):
        return len(self._images)

    def restrict(self, names: Iterable[str]) -> "Assignment":
        return Assignment({n: self[n] for n in names}, self.identity)

    def evaluate(self, w: Word):
        names = w.alphabet.names
        inverses: dict[str, Any] = {}
        out = self.identity
        for l in w.tietze:
            name = names[abs(l) - 1]
            g = self[name]
            if l < 0:
                if name not in inverses:
                    inverses[name] = ~g
                g = inverses[name]
            out = out * g
        return out


@dataclass
class RelatorResult:
    relator: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        d = {"relator": self.relator, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class CheckReport:
    entries: list[RelatorResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[RelatorResult]:
        return [e for e in self.entries if not e.passed]

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for e in other.entries:
            self.entries.append(RelatorResult(prefix + e.relator, e.passed, e.witness))
        return self

    def add(self, label: str, passed: bool, witness: str | None = None) -> None:
        self.entries.append(RelatorResult(label, passed, None if passed else (witness or "check failed")))

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "passed": self.passed}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)

    def __bool__(self):
        return self.passed


def check_relators(P: Presentation, A: Assignment) -> CheckReport:
    """Evaluate every relator of ``P`` under ``A``; a relator passes iff it
    evaluates to the identity.  Failures carry the evaluated element."""
    missing = [g for g in P.generators if g not in A]
    if missing:
        raise UnassignedGeneratorError(missing[0])
    report = CheckReport()
    for r in P.relators:
        value = A.evaluate(r)
        ok = value == A.identity
        report.entries.append(RelatorResult(str(r), ok, None if ok else str(value)))
    return report


def _map_word(w: Word, images: Mapping[str, Word], target: Alphabet) -> Word:
    out = target.identity()
    for l in w.tietze:
        name = w.alphabet.names[abs(l) - 1]
        img = images[name] if name in images else target.gen(name)
        out = multiply(out, img if l > 0 else invert(img))
    return out


def _as_word_map(mapping: Mapping[str, Word | str], alphabet: Alphabet) -> dict[str, Word]:
    return {k: (parse_word(v, alphabet) if isinstance(v, str) else v) for k, v in mapping.items()}


def induced_assignment(P_new: Presentation, new_in_old: Mapping[str, Word | str],
                       P_old: Presentation, A: Assignment) -> Assignment:
    """Realize ``P_new`` by evaluating each new generator, spelled in the old
    generators, under ``A``.  New generators missing from ``new_in_old`` keep
    the old generator of the same name."""
    words = _as_word_map(new_in_old, P_old.alphabet)
    images = {}
    for g in P_new.generators:
        w = words[g] if g in words else P_old.alphabet.gen(g)
        images[g] = A.evaluate(w)
    return Assignment(images, A.identity)


def verify_substitution(
    P_old: Presentation,
    P_new: Presentation,
    old_in_new: Mapping[str, Word | str],
    new_in_old: Mapping[str, Word | str],
    A: Assignment,
) -> CheckReport:
    """Certify a change of generators on a concrete realization.

    Builds ``A'`` for ``P_new`` from ``new_in_old`` and ``A``, then checks that
    ``A'`` satisfies every relator of ``P_new`` and that ``old_in_new``
    evaluated under ``A'`` gives back ``A`` generator by generator.  This is a
    necessary condition for the two presentations to define the same group
    through the given maps, not a proof of isomorphism.
    """
    report = CheckReport()
    report.extend(check_relators(P_old, A), "old: ")
    A_new = induced_assignment(P_new, new_in_old, P_old, A)
    report.extend(check_relators(P_new, A_new), "new: ")
    back = _as_word_map(old_in_new, P_new.alphabet)
    for g in P_old.generators:
        w = back[g] if g in back else P_new.alphabet.gen(g)
        ok = A_new.evaluate(w) == A[g]
        report.add(f"round-trip {g} = {w}", ok, None if ok else f"{A_new.evaluate(w)} != {A[g]}")
    return report


def verify_amalgam(
    G: Presentation,
    factor1: Presentation,
    factor2: Presentation,
    edge: Sequence[str],
    A: Assignment,
) -> CheckReport:
    """Check a splitting ``G = factor1 *_edge factor2`` on a realization.

    Factor generators are subsets of the generators of ``G``.  Checked: ``A``
    realizes ``G``; each factor presentation holds under the restricted
    assignment; the edge generators lie in both factors and agree there;
    every generator of ``G`` lies in some factor; and every relator of ``G``
    is supported inside a single factor.
    """
    report = CheckReport()
    report.extend(check_relators(G, A), "G: ")
    gset = set(G.generators)
    for label, F in (("factor1", factor1), ("factor2", factor2)):
        stray = [g for g in F.generators if g not in gset]
        if stray:
            report.add(f"{label} generators in G", False, f"{stray} not generators of G")
            continue
        report.extend(check_relators(F, A.restrict(F.generators)), f"{label}: ")
    f1, f2 = set(factor1.generators), set(factor2.generators)
    for e in edge:
        if e not in f1 or e not in f2:
            report.add(f"edge {e} in both factors", False, f"{e} missing from a factor")
            continue
        v1 = A.restrict(factor1.generators).evaluate(factor1.alphabet.gen(e))
        v2 = A.restrict(factor2.generators).evaluate(factor2.alphabet.gen(e))
        report.add(f"edge {e} agrees", v1 == v2, f"{v1} != {v2}")
    uncovered = [g for g in G.generators if g not in f1 | f2]
    report.add("factors cover G", not uncovered, f"uncovered: {uncovered}")
    for r in G.relators:
        support = {G.generators[i] for i in r.generators_used()}
        ok = support <= f1 or support <= f2
        report.add(f"relator {r} local to a factor", ok, f"support {sorted(support)}")
    return report


def raag_check(P: Presentation) -> bool:
    """True iff every relator is a commutator of two distinct generators."""
    for r in P.relators:
        t = r.tietze
        if len(t) != 4:
            return False
        u, v = t[0], t[1]
        if abs(u) == abs(v) or t[2] != -u or t[3] != -v:
            return False
    return True
