"""Presentations used by the verification suites.

Every builder returns a :class:`~holkit.presentations.Presentation` whose
generator names match the tower conventions (``x1, x2, ...`` for the free
factor).  :func:`canonical_fixtures` lists one instance of each family for
export with ``holkit eval --dump-fixtures``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .autf2 import aut_f2_presentation, basis, gl2_presentation
from .extensions import TowerElement
from .morphisms import Automorphism
from .presentations import Presentation
from .words import Alphabet, Word

F2X = Alphabet.numbered(2)

CASE_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (1, -1), 4: (-1, -1)}

# finite subgroups D of Aut(F2) for the general amalgam
D_CHOICES = {
    "trivial": ((), ()),
    "p": (("p",), ("p^2",)),
    "x": (("x",), ("x^4",)),
    "p,x": (("p", "x"), ("p^2", "x^4", "(p x)^2")),
}


def _xs(lo: int, hi: int) -> list[str]:
    return [f"x{i}" for i in range(lo, hi + 1)]


def _pw(name: str, k: int) -> str:
    return "e" if k == 0 else f"{name}^{k}"


def comm(a: str, b: str) -> str:
    return f"{a} {b} {a}^-1 {b}^-1"


def conj_rel(t: str, x: str, image: str) -> str:
    return f"{t} {x} {t}^-1 = {image}"


# --- Aut(F2), GL2(Z), FP ------------------------------------------------------

def fp_presentation() -> Presentation:
    """``F3 ⋊ F2`` with ``f_i a_j f_i^-1 = a_j`` and ``f_i a3 f_i^-1 = a3 a_i``."""
    rels = []
    for i in (1, 2):
        for j in (1, 2):
            rels.append(conj_rel(f"f{i}", f"a{j}", f"a{j}"))
        rels.append(conj_rel(f"f{i}", "a3", f"a3 a{i}"))
    return Presentation.build("a1 a2 a3 f1 f2", rels, "FP")


# --- mapping tori G_n ---------------------------------------------------------

def _act_images(g) -> list[Word]:
    return list(g.action.images)


def mapping_torus_presentation(n: int, g) -> Presentation:
    """``G_n = F(n+1) ⋊ <t>``.

    For ``n = 1`` ``g`` is an element of ``Hol(F2)`` (level-1 tower element)
    and ``t x_i t^-1 = g1 α(x_i) g1^-1``.  For ``n >= 2`` ``g`` lies in
    ``H(n-1)`` and ``t`` acts through ``E(g)``.
    """
    if n == 1:
        rels = [conj_rel("t", x, str(g.free * img * ~g.free)) for x, img in zip(_xs(1, 2), _act_images(g))]
        return Presentation.build(["t"] + _xs(1, 2), rels, "G_1")
    if g.level != n - 1:
        raise ValueError(f"G_{n} needs g in H({n - 1})")
    rels = [conj_rel("t", x, str(img)) for x, img in zip(_xs(1, n + 1), g.embedding.images)]
    return Presentation.build(["t"] + _xs(1, n + 1), rels, f"G_{n}")


def mapping_torus_alpha(n: int, g) -> Presentation:
    """After ``α = g1^-1 t``: ``α x_i α^-1 = g1^-1 g2(x_i) g1`` and ``[α, x(n+1)]``."""
    g1 = g.free
    if n == 1:
        rels = [conj_rel("alpha", x, str(img)) for x, img in zip(_xs(1, 2), _act_images(g))]
        return Presentation.build(["alpha"] + _xs(1, 2), rels, "G_1 (alpha)")
    act = g.action
    g1 = g1.over(act.domain)
    rels = [conj_rel("alpha", f"x{i}", str(~g1 * act(act.domain.gen(i - 1)) * g1)) for i in range(1, n + 1)]
    rels.append(comm("alpha", f"x{n + 1}"))
    return Presentation.build(["alpha"] + _xs(1, n + 1), rels, f"G_{n} (alpha)")


def mapping_torus_split(n: int, g) -> tuple[Presentation, Presentation]:
    """Factors ``H = <alpha, x1..xn>`` and ``Z^2 = <alpha, x(n+1)>``."""
    P = mapping_torus_alpha(n, g)
    H = Presentation.build(["alpha"] + _xs(1, n), P.relators[:n], "H")
    Z2 = Presentation.build(["alpha", f"x{n + 1}"], [comm("alpha", f"x{n + 1}")], "Z^2")
    return H, Z2


def mapping_torus_beta(n: int, g) -> Presentation:
    """``H`` after ``β = g1 α``: ``β x_i β^-1 = g2(x_i)``."""
    rels = [conj_rel("beta", x, str(img)) for x, img in zip(_xs(1, n), _act_images(g))]
    return Presentation.build(["beta"] + _xs(1, n), rels, "H (beta)")


# --- the general amalgam ------------------------------------------------------

def _d_parts(D: str):
    names, d_rels = D_CHOICES[D]
    B = basis(F2X)
    auts = {"p": B.p, "x": B.x}
    action = [conj_rel(d, x, str(auts[d](F2X.gen(x)))) for d in names for x in ("x1", "x2")]
    return list(names), list(d_rels), action


def general_presentation(n: int, D: str) -> Presentation:
    """``F(n+1) ⋊ (Z × E(D))`` with ``Z = <xi>`` acting by ``E(x_n)``."""
    if n < 3:
        raise ValueError("the general amalgam needs n >= 3")
    names, d_rels, action = _d_parts(D)
    xs = _xs(1, n + 1)
    rels = d_rels + action
    rels += [comm(x, d) for d in names for x in xs[2:]]
    rels += [comm("xi", d) for d in names]
    rels += [comm("xi", x) for x in xs[:n]]
    rels.append(conj_rel("xi", f"x{n + 1}", f"x{n} x{n + 1} x{n}^-1"))
    return Presentation.build(xs + ["xi"] + names, rels, f"G (n={n}, D={D})")


def _general_new_gens(n: int) -> list[str]:
    return _xs(1, n - 1) + [f"x{n + 1}", "z"]


def general_substituted(n: int, D: str, literal: bool = False) -> Presentation:
    """After ``z = x_n^-1 xi``.

    ``literal=True`` keeps the relators ``[z, x_j] = 1`` for ``j < n`` as
    sometimes written, which do not hold; it serves as a negative control.
    """
    names, d_rels, action = _d_parts(D)
    others = _xs(3, n - 1) + [f"x{n + 1}", "z"]
    rels = d_rels + action
    rels += [comm(x, d) for d in names for x in others]
    rels += [comm("xi", d) for d in names]
    partner = "z" if literal else "xi"
    rels += [comm(partner, x) for x in _xs(1, n - 1)]
    rels.append(comm("xi", "z"))
    rels.append(comm("z", f"x{n + 1}"))
    return Presentation.build(_general_new_gens(n) + ["xi"] + names, rels, f"G' (n={n}, D={D})")


def general_factors(n: int, D: str) -> tuple[Presentation, Presentation, list[str]]:
    """``G1 = <x1, x2, xi, D>`` and ``G2 = <x3..x(n-1), x(n+1), z, xi, D>``."""
    names, d_rels, action = _d_parts(D)
    G1 = Presentation.build(
        ["x1", "x2", "xi"] + names,
        d_rels + action + [comm("xi", d) for d in names] + [comm("xi", "x1"), comm("xi", "x2")],
        "G1",
    )
    core = general_core(n)
    others = _xs(3, n - 1) + [f"x{n + 1}", "z"]
    rels = d_rels + [str(r) for r in core.relators]
    rels += [comm(x, d) for d in names for x in others] + [comm("xi", d) for d in names]
    G2 = Presentation.build(list(core.generators) + names, rels, "G2")
    return G1, G2, ["xi"] + names


def general_core(n: int) -> Presentation:
    """The RAAG factor of ``G2``."""
    gens = _xs(3, n - 1) + [f"x{n + 1}", "z", "xi"]
    rels = [comm("xi", "z")] + [comm("xi", x) for x in _xs(3, n - 1)] + [comm("z", f"x{n + 1}")]
    return Presentation.build(gens, rels, "G2 core")


# --- F_n ⋊ (Z x Z/2) cases ----------------------------------------------------

def t2_automorphism(k: int, e1: int, e2: int, alphabet: Alphabet = F2X) -> Automorphism:
    """``x1 -> x2^k x1^e1 x2^-k``, ``x2 -> x2^e2``."""
    a, b = alphabet.names
    return Automorphism.from_strings(
        alphabet,
        [f"{b}^{k} {a}^{e1} {b}^{-k}", f"{b}^{e2}"],
        [f"{b}^{-k * e2} {a}^{e1} {b}^{k * e2}", f"{b}^{e2}"],
    )


def _t1_rels(n: int, t1: str = "t1") -> list[str]:
    return [f"{t1}^2", conj_rel(t1, "x1", "x1^-1")] + [conj_rel(t1, x, x) for x in _xs(2, n)]


def npc_z2_aut(n: int, k: int, case: int) -> Presentation:
    """``F_n ⋊ (Z × Z/2)`` with ``t2`` an automorphism of ``F2``."""
    e1, e2 = CASE_SIGNS[case]
    rels = _t1_rels(n)
    rels += [conj_rel("t2", "x1", f"x2^{k} x1^{e1} x2^{-k}"), conj_rel("t2", "x2", f"x2^{e2}")]
    rels += [conj_rel("t2", x, x) for x in _xs(3, n)]
    rels.append(comm("t1", "t2"))
    return Presentation.build(_xs(1, n) + ["t1", "t2"], rels, f"G (n={n}, k={k}, case {case})")


def npc_z2_aut_split(n: int, k: int, case: int):
    """``K1 = <t1, t2, x3..xn>``, ``K2 = <t1, t2, x1, x2>``, edge ``K = <t1, t2>``."""
    e1, e2 = CASE_SIGNS[case]
    xs = _xs(3, n)
    K1 = Presentation.build(
        ["t1", "t2"] + xs,
        ["t1^2", comm("t1", "t2")] + [comm("t1", x) for x in xs] + [comm("t2", x) for x in xs],
        "K1",
    )
    K2 = lemma_t2_form(k, case, name="K2")
    return K1, K2, ["t1", "t2"]


def lemma_t2_form(k: int, case: int, name: str = "") -> Presentation:
    """The rank-2 group generated by t1 and t2 for sign case ``case``."""
    e1, e2 = CASE_SIGNS[case]
    rels = _t1_rels(2) + [
        conj_rel("t2", "x1", f"x2^{k} x1^{e1} x2^{-k}"),
        conj_rel("t2", "x2", f"x2^{e2}"),
        comm("t1", "t2"),
    ]
    return Presentation.build(["t1", "t2", "x1", "x2"], rels, name or f"lemma (k={k}, case {case})")


def lemma_xi_form(case: int, xi: str = "xi") -> Presentation:
    """After ``xi = x2^-k t2``: ``xi x1 xi^-1 = x1^e1``, ``xi x2 xi^-1 = x2^e2``."""
    e1, e2 = CASE_SIGNS[case]
    rels = _t1_rels(2) + [comm("t1", xi), conj_rel(xi, "x1", f"x1^{e1}"), conj_rel(xi, "x2", f"x2^{e2}")]
    return Presentation.build(["t1", "x1", "x2", xi], rels, f"case {case} ({xi})")


def lemma_split(case: int):
    """``L1 = <x2, t1, xi>``, ``L2 = <x1, t1, xi>``, edge ``L = <t1, xi>``
    for Cases 1 and 3."""
    if case not in (1, 3):
        raise ValueError("the split is stated for Cases 1 and 3")
    l1 = ["t1^2", comm("t1", "x2"), comm("t1", "xi")]
    l1.append(comm("x2", "xi") if case == 1 else conj_rel("xi", "x2", "x2^-1"))
    L1 = Presentation.build(["x2", "t1", "xi"], l1, "L1")
    L2 = Presentation.build(
        ["x1", "t1", "xi"],
        [conj_rel("t1", "x1", "x1^-1"), conj_rel("xi", "x1", "x1"), "t1^2", comm("t1", "xi")],
        "L2",
    )
    return L1, L2, ["t1", "xi"]


def d_infinity() -> Presentation:
    return Presentation.build(["x1", "t1"], ["t1^2", "(t1 x1)^2"], "D_inf")


def z2_by_z2() -> Presentation:
    """``Z^2 × Z/2`` on ``x2, t1, xi``."""
    return Presentation.build(["x2", "t1", "xi"], ["t1^2", comm("t1", "x2"), comm("t1", "xi"), comm("x2", "xi")], "Z^2 x Z/2")


def npc_z2_free(n: int, k: int) -> Presentation:
    """``t2 = x2^k`` acting on ``x3..xn`` by conjugation."""
    rels = _t1_rels(n)
    rels += [conj_rel("t2", "x1", "x1"), conj_rel("t2", "x2", "x2")]
    rels += [conj_rel("t2", x, f"x2^{k} {x} x2^{-k}") for x in _xs(3, n)]
    rels.append(comm("t1", "t2"))
    return Presentation.build(_xs(1, n) + ["t1", "t2"], rels, f"G (n={n}, t2=x2^{k})")


def npc_z2_free_xi(n: int, k: int) -> Presentation:
    rels = _t1_rels(n)
    rels.append(conj_rel("xi", "x1", f"x2^{-k} x1 x2^{k}"))
    rels += [conj_rel("xi", x, x) for x in _xs(2, n)]
    rels.append(comm("t1", "xi"))
    return Presentation.build(_xs(1, n) + ["t1", "xi"], rels, f"G (n={n}, xi)")


def npc_z2_free_split(n: int, k: int):
    xs = _xs(3, n)
    K1 = Presentation.build(
        ["t1", "xi"] + xs,
        ["t1^2", comm("t1", "xi")] + [comm("t1", x) for x in xs] + [comm("xi", x) for x in xs],
        "K1",
    )
    K2 = Presentation.build(
        ["x1", "x2", "t1", "xi"],
        _t1_rels(2) + [conj_rel("xi", "x1", f"x2^{-k} x1 x2^{k}"), conj_rel("xi", "x2", "x2"), comm("t1", "xi")],
        "K2",
    )
    return K1, K2, ["t1", "xi"]


def npc_z2_free_zeta() -> Presentation:
    """``K2`` after ``zeta = x2^k xi``."""
    rels = _t1_rels(2) + [conj_rel("zeta", "x1", "x1"), conj_rel("zeta", "x2", "x2"), comm("t1", "zeta")]
    return Presentation.build(["x1", "x2", "t1", "zeta"], rels, "K2 (zeta)")


# --- export -------------------------------------------------------------------

def _sample_mapping_torus() -> Presentation:
    B = basis(F2X)
    g = TowerElement(2, Alphabet.numbered(3).parse("x1 x2^2"), TowerElement.of_aut(1, B.p))
    return mapping_torus_presentation(3, g)


def canonical_fixtures() -> dict[str, Presentation]:
    out = {
        "aut_f2": aut_f2_presentation(),
        "gl2": gl2_presentation(),
        "fp": fp_presentation(),
        "mapping_torus_n3": _sample_mapping_torus(),
        "general_n3_p": general_presentation(3, "p"),
        "general_n3_p_substituted": general_substituted(3, "p"),
        "general_core_n3": general_core(3),
        "npc_z2_t2_free_n3_k1": npc_z2_free(3, 1),
        "d_infinity": d_infinity(),
    }
    for case in (1, 2, 3, 4):
        out[f"sign_case{case}_k1"] = lemma_t2_form(1, case)
        out[f"sign_case{case}_xi"] = lemma_xi_form(case)
    return out


def dump_fixtures(directory: str | Path) -> list[Path]:
    """Write each canonical fixture as ``<name>.txt``; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, P in sorted(canonical_fixtures().items()):
        path = directory / f"{name}.txt"
        path.write_text(P.to_text(), encoding="utf-8")
        paths.append(path)
    return paths
