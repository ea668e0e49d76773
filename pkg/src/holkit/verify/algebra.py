"""Suites about Aut(F2) itself: the presentation, the normalizer of D4,
centralizers of t1 and finite orders."""
from __future__ import annotations

from collections import Counter

from ..autf2 import (
    BEYOND_CAP,
    F2,
    GL2_RELATIONS,
    P_MAT,
    X_MAT,
    Y_MAT,
    aut_f2_presentation,
    basis,
    enumerate_ball,
    gl2_presentation,
    order_of,
)
from ..extensions import HolElement, TowerElement
from ..fixtures import F2X
from ..morphisms import Automorphism, IntMatrix, abelianize
from ..presentations import Assignment, Presentation, check_relators
from ..words import Word, substitute
from .report import EVIDENCE, CommutantClass, SuiteParams, SuiteReport, timed

BASIS_NAMES = ["p", "x", "y", "ta", "tb"]
TAU_RELATIONS = slice(5, 11)


def _mutate(r: Word) -> Word:
    """A single-relator mutation: prepend the relator's first letter."""
    t = r.tietze
    return Word(r.alphabet, (t[0],) + t)


def presentation_controls() -> list[str]:
    n = len(aut_f2_presentation().relators) + len(gl2_presentation().relators)
    return ["swap-x"] + [f"mutate:{i}" for i in range(n)]


def suite_autf2_presentation(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """Relators of Aut(F2) and GL2(Z) under the derived basis and the
    candidate matrices, plus the projection on generators.

    Controls: ``swap-x`` realizes ``x`` by its inverse; ``mutate:i``
    corrupts the ``i``-th relator (Aut(F2) first, then GL2(Z)).
    """
    params = params or SuiteParams()
    report = SuiteReport("suite_autf2_presentation", params)
    with timed(report):
        B = basis(F2)
        aut = aut_f2_presentation()
        gl2 = gl2_presentation()
        if control and control.startswith("mutate:"):
            i = int(control.split(":", 1)[1])
            if i < len(aut.relators):
                rels = list(aut.relators)
                rels[i] = _mutate(rels[i])
                aut = aut.with_relators(rels)
            else:
                rels = list(gl2.relators)
                rels[i - len(aut.relators)] = _mutate(rels[i - len(aut.relators)])
                gl2 = gl2.with_relators(rels)
        elif control not in (None, "swap-x"):
            raise ValueError(f"unknown control {control!r}")
        images = B.as_dict()
        if control == "swap-x":
            images["x"] = ~B.x
        A = Assignment(images, B.identity)
        for i, res in enumerate(check_relators(aut, A).entries):
            report.add(f"aut_f2 relator {i:02d}: {res.relator}", res.passed, res.witness)
        M = Assignment({"P": P_MAT, "X": X_MAT, "Y": Y_MAT}, IntMatrix.identity(2))
        for i, res in enumerate(check_relators(gl2, M).entries):
            report.add(f"gl2 relator {i:02d}: {res.relator}", res.passed, res.witness)
        taus = aut.with_relators(aut.relators[TAU_RELATIONS])
        report.extend("tau relations subset", check_relators(taus, A))
        expected = {"p": P_MAT, "x": X_MAT, "y": Y_MAT, "ta": IntMatrix.identity(2), "tb": IntMatrix.identity(2)}
        for name in BASIS_NAMES:
            got = abelianize(images[name])
            report.add(f"projection {name} -> {expected[name]}", got == expected[name], f"got {got}")
        report.notes["relation_counts"] = {"aut_f2": len(aut.relators), "gl2": len(gl2.relators)}
    return report


# --- normalizer of D4 -----------------------------------------------------------

def suite_normalizer_d4(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """Every element of the radius ball normalizing ``D4 = <p, x>`` lies in D4.

    Control ``d2`` runs the same test for ``<p, x^2>``, whose normalizer is
    larger, so violations appear.
    """
    params = (params or SuiteParams()).resolved(radius=6)
    report = SuiteReport("suite_normalizer_d4", params)
    with timed(report):
        B = basis(F2)
        if control == "d2":
            sub_gens = [B.p, B.x * B.x]
        elif control is None:
            sub_gens = [B.p, B.x]
        else:
            raise ValueError(f"unknown control {control!r}")
        D = set(enumerate_ball(sub_gens, 8))
        report.add("subgroup size", len(D) == (4 if control == "d2" else 8), f"{len(D)} elements")
        report.add("p x p^-1 = x^-1", B.p * B.x * ~B.p == ~B.x, str(B.p * B.x * ~B.p))
        ball = enumerate_ball(B.generators(), params.radius, names=BASIS_NAMES)
        normalizers, violations = [], []
        for g in ball:
            gi = ~g
            if all(g * s * gi in D for s in sub_gens):
                normalizers.append(g)
                if g not in D:
                    violations.append(g)
        report.add("identity normalizes and lies in the subgroup", B.identity in D and B.identity in normalizers)
        normal_set = set(normalizers)
        report.add("every subgroup element in the ball normalizes", all(d in normal_set for d in D if d in ball))
        report.add(
            EVIDENCE + f"no normalizer outside the subgroup in the radius-{params.radius} ball",
            not violations,
            "; ".join(ball.word_of(g) for g in violations[:3]),
        )
        report.notes.update(
            ball_size=len(ball), sphere_sizes=ball.sphere_sizes,
            normalizers=len(normalizers), violations=len(violations),
        )
    return report


# --- centralizer of t1 ----------------------------------------------------------

def reduced_words(alphabet, max_length: int):
    """All reduced words of length at most ``max_length``, shortest first."""
    letters = [i for g in range(1, alphabet.rank + 1) for i in (g, -g)]
    level = [()]
    yield Word(alphabet, ())
    for _ in range(max_length):
        nxt = []
        for t in level:
            for l in letters:
                if t and t[-1] == -l:
                    continue
                w = t + (l,)
                nxt.append(w)
                yield Word(alphabet, w)
        level = nxt


def _x2_power(t: tuple[int, ...]) -> int | None:
    if all(l == 2 for l in t):
        return len(t)
    if all(l == -2 for l in t):
        return -len(t)
    return None


def classify_free(w: Word) -> CommutantClass:
    k = _x2_power(w.tietze)
    if k:
        return CommutantClass("free-part-power", k)
    return CommutantClass("unclassified")


def classify_aut(f: Automorphism) -> CommutantClass:
    """Match ``x1 -> x2^k x1^e1 x2^-k``, ``x2 -> x2^e2`` (alphabet ``x1, x2``)."""
    u1, u2 = f.forward.tietze_images
    if u2 not in ((2,), (-2,)):
        return CommutantClass("unclassified")
    e2 = 1 if u2 == (2,) else -1
    mid = [i for i, l in enumerate(u1) if abs(l) == 1]
    if len(mid) != 1:
        return CommutantClass("unclassified")
    i = mid[0]
    head, tail = u1[:i], u1[i + 1:]
    k = _x2_power(head) if head else 0
    if k is None or tail != tuple(-l for l in reversed(head)):
        return CommutantClass("unclassified")
    return CommutantClass("aut-conjugate-form", k, (1 if u1[i] == 1 else -1, e2))


def suite_commuting_with_t1(params: SuiteParams | None = None, control: str | None = None,
                            word_length: int = 10) -> SuiteReport:
    """Elements commuting with ``t1: x1 -> x1^-1, x2 -> x2``.

    (i) reduced words of length at most ``word_length`` fixed by ``t1`` are
    the powers of ``x2``; (ii) infinite-order elements of the Aut(F2) ball
    of the given radius commuting with ``t1`` have the aut-conjugate form
    with ``k`` in ``K``; (iii) centralizer elements of ``Hol(F2)`` that are
    neither pure words nor pure automorphisms are listed in the notes.
    Control ``wrong-t1`` uses ``x1 -> x1, x2 -> x2^-1`` instead.
    """
    params = (params or SuiteParams()).resolved(radius=3)
    report = SuiteReport("suite_commuting_with_t1", params)
    with timed(report):
        B = basis(F2X)
        if control == "wrong-t1":
            t1 = B.x * B.p
        elif control is None:
            t1 = B.t1
        else:
            raise ValueError(f"unknown control {control!r}")
        report.add("t1 is x1 -> x1^-1, x2 -> x2", control is not None or str(t1) == "x1 -> x1^-1, x2 -> x2", str(t1))

        # (i) free words
        images = list(t1.images)
        invariant, total, bad = [], 0, []
        for w in reduced_words(F2X, word_length):
            total += 1
            if substitute(w, images) == w:
                invariant.append(w)
                if w and classify_free(w).tag != "free-part-power":
                    bad.append(w)
        expected = 2 * word_length + 1
        report.add(f"invariant words of length <= {word_length} are powers of x2", not bad, "; ".join(map(str, bad[:3])))
        report.add(f"all {expected} powers x2^j with |j| <= {word_length} are invariant",
                   len(invariant) - len(bad) == expected, f"{len(invariant) - len(bad)} found")
        report.notes["words_enumerated"] = total

        # (ii) the Aut(F2) ball
        ball = enumerate_ball(B.generators(), params.radius, names=BASIS_NAMES)
        finite, classes, unclassified, out_of_range = [], Counter(), [], []
        for g in ball:
            if g * t1 != t1 * g:
                continue
            order = order_of(g, params.cap)
            if order is not BEYOND_CAP:
                finite.append((ball.word_of(g), order))
                continue
            c = classify_aut(g)
            if c.tag == "unclassified" or c.k == 0:
                unclassified.append(f"{ball.word_of(g)} = [{g}]")
            elif c.k not in params.K:
                out_of_range.append(f"{ball.word_of(g)}: {c}")
            classes[str(c)] += 1
        report.add(EVIDENCE + f"infinite-order centralizer elements in the radius-{params.radius} ball have the four-case form",
                   not unclassified, "; ".join(unclassified[:3]))
        report.add("classified exponents k lie in K", not out_of_range, "; ".join(out_of_range[:3]))
        report.notes["aut_ball_size"] = len(ball)
        report.notes["aut_centralizer_classes"] = dict(sorted(classes.items()))
        report.notes["aut_centralizer_finite"] = sorted(f"{w} (order {o})" for w, o in finite)

        # (iii) Hol(F2), mixed elements reported only
        hol_radius = min(params.radius, 3)
        ident = Automorphism.identity(F2X)
        hol_gens = [HolElement(g, ident) for g in F2X.gens()] + [HolElement(F2X.identity(), a) for a in B.generators()]
        hol_names = ["x1", "x2"] + BASIS_NAMES
        T1 = HolElement(F2X.identity(), t1)
        hball = enumerate_ball(hol_gens, hol_radius, names=hol_names)
        pure_free_bad, mixed = [], []
        for h in hball:
            if h * T1 != T1 * h:
                continue
            if h.aut.is_identity() and not h.free.is_identity():
                if classify_free(h.free).tag != "free-part-power":
                    pure_free_bad.append(str(h))
            elif not h.aut.is_identity() and not h.free.is_identity():
                mixed.append(hball.word_of(h))
        report.add(f"pure free centralizer elements in the radius-{hol_radius} Hol ball are powers of x2",
                   not pure_free_bad, "; ".join(pure_free_bad[:3]))
        report.notes["hol_ball_size"] = len(hball)
        report.notes["hol_mixed_centralizer_count"] = len(mixed)
        report.notes["hol_mixed_centralizer_examples"] = sorted(mixed, key=lambda s: (len(s), s))[:5]
    return report


# --- finite orders --------------------------------------------------------------

def suite_finite_orders(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """Order census of the Aut(F2) ball, witnesses for Z/3, Z/4, D2 and D4,
    and D4 x Z inside H(2) as ``<p, x, x3>``.

    Control ``z-from-hol`` takes the Z factor to be ``<x2>``, which does not
    commute with the lifted ``p``.
    """
    params = (params or SuiteParams()).resolved(radius=6)
    report = SuiteReport("suite_finite_orders", params)
    with timed(report):
        B = basis(F2)
        ball = enumerate_ball(B.generators(), params.radius, names=BASIS_NAMES)
        hist = Counter()
        by_order: dict = {}
        for g in ball:
            o = order_of(g, params.cap)
            key = "beyond-cap" if o is BEYOND_CAP else str(o)
            hist[key] += 1
            by_order.setdefault(key, g)
        allowed = {"1", "2", "3", "4", "beyond-cap"}
        report.add("order histogram supported on {1, 2, 3, 4, beyond-cap}", set(hist) <= allowed,
                   f"unexpected orders {sorted(set(hist) - allowed)}")
        report.notes["ball_size"] = len(ball)
        report.notes["order_histogram"] = dict(sorted(hist.items()))

        g3 = by_order.get("3")
        if g3 is None:
            report.add("Z/3 witness", False, "no element of order 3 in the ball")
        else:
            report.add(f"Z/3 witness <{ball.word_of(g3)}>", len(enumerate_ball([g3], 3)) == 3, "cyclic group size")
            report.notes["z3_witness"] = ball.word_of(g3)
        report.add("Z/4 witness <x>", order_of(B.x) == 4 and len(enumerate_ball([B.x], 4)) == 4, str(order_of(B.x)))
        report.add("order(x^2) = 2", order_of(B.x * B.x) == 2, str(order_of(B.x * B.x)))
        d2 = enumerate_ball([B.p, B.x * B.x], 4)
        report.add("D2 witness <p, x^2>", len(d2) == 4 and all(order_of(g) in (1, 2) for g in d2), f"{len(d2)} elements")
        d4 = enumerate_ball([B.p, B.x], 8)
        dihedral = (B.x ** 4).is_identity() and (B.p ** 2).is_identity() and ((B.p * B.x) ** 2).is_identity()
        report.add("D4 witness <p, x>: 8 elements, dihedral relations, non-abelian",
                   len(d4) == 8 and dihedral and B.p * B.x != B.x * B.p, f"{len(d4)} elements")

        # order-4 elements are conjugate to x^{+-1}, within the ball
        conj = set()
        for h in ball:
            hi = ~h
            conj.add(h * B.x * hi)
            conj.add(h * ~B.x * hi)
        strays = [g for g in ball if order_of(g, params.cap) == 4 and g not in conj]
        report.add(EVIDENCE + "order-4 elements of the ball are conjugate to x^{+-1} by ball elements",
                   not strays, "; ".join(ball.word_of(g) for g in strays[:3]))

        # D4 x Z inside H(2)
        P2, X2 = TowerElement.of_aut(2, B.p), TowerElement.of_aut(2, B.x)
        z = TowerElement.free_generator(2, 2 if control == "z-from-hol" else 3)
        if control not in (None, "z-from-hol"):
            raise ValueError(f"unknown control {control!r}")
        zname = "x2" if control else "x3"
        for name, d in (("p", P2), ("x", X2)):
            c = d * z * ~d * ~z
            report.add(f"D4 x Z in H(2): [{name}, {zname}] = 1", c.is_identity(), str(c))
        lifted = enumerate_ball([P2, X2], 8)
        report.add("D4 x Z in H(2): lifted D4 has 8 elements", len(lifted) == 8, f"{len(lifted)} elements")
        report.add(f"D4 x Z in H(2): {zname} has infinite order", order_of(z, params.cap) is BEYOND_CAP, str(order_of(z, params.cap)))
        window = {d * z ** j for d in lifted for j in range(-2, 3)}
        report.add("D4 x Z in H(2): d z^j distinct for |j| <= 2", len(window) == 40, f"{len(window)} products")
    return report
