import random

import pytest

from holkit.autf2 import P_MAT, X_MAT, Y_MAT, aut_f2_presentation, basis, gl2_presentation
from holkit.extensions import TowerElement, section
from holkit.fixtures import (
    canonical_fixtures,
    general_core,
    mapping_torus_alpha,
    mapping_torus_presentation,
    mapping_torus_split,
    npc_z2_free,
    npc_z2_free_xi,
)
from holkit.grammar import ParseError
from holkit.morphisms import IntMatrix
from holkit.presentations import (
    Assignment,
    Presentation,
    UnassignedGeneratorError,
    check_relators,
    induced_assignment,
    raag_check,
    verify_amalgam,
    verify_substitution,
)
from holkit.verify.rewrite import appendix_free_assignment
from holkit.words import Alphabet

F2 = Alphabet.numbered(2)


def gl2_assignment():
    return Assignment({"P": P_MAT, "X": X_MAT, "Y": Y_MAT})


def aut_assignment(B=None):
    B = B or basis()
    return Assignment(B.as_dict())


def level_two(g):
    """t -> (ε, g) and x_i -> x_i inside H(2)."""
    return Assignment({"t": section(g), **{f"x{i}": TowerElement.free_generator(2, i) for i in (1, 2, 3)}})


def test_gl2_presentation_passes():
    rep = check_relators(gl2_presentation(), gl2_assignment())
    assert rep.passed and len(rep.entries) == 5


def test_aut_presentation_passes_and_swap_fails():
    P = aut_f2_presentation()
    assert check_relators(P, aut_assignment()).passed
    B = basis()
    swapped = Assignment({**B.as_dict(), "x": B.y, "y": B.x})
    rep = check_relators(P, swapped)
    assert not rep.passed
    assert all(e.witness for e in rep.failures())


def test_generators_to_identity_with_power_relators():
    P = Presentation.build("a b", ["a^3", "b^2", "a^5 b^-4"])
    I = IntMatrix.identity(2)
    assert check_relators(P, Assignment({"a": I, "b": I})).passed


def test_unassigned_generator():
    with pytest.raises(UnassignedGeneratorError):
        check_relators(gl2_presentation(), Assignment({"P": P_MAT, "X": X_MAT}))


def test_conjugation_invariance():
    P = aut_f2_presentation()
    B = basis()
    rng = random.Random(0)
    for _ in range(20):
        c = B.identity
        for _ in range(6):
            c = c * rng.choice(B.generators())
        A = Assignment({k: c * v * ~c for k, v in B.as_dict().items()})
        assert check_relators(P, A).passed


def test_text_format_round_trip():
    for P in canonical_fixtures().values():
        Q = Presentation.from_text(P.to_text())
        assert Q.generators == P.generators and Q.relators == P.relators


def test_text_format_errors():
    with pytest.raises(ParseError):
        Presentation.from_text("a b\n")
    with pytest.raises(ParseError):
        Presentation.from_text("# only a comment\n")
    P = Presentation.from_text("gens: a t;\nt a t^-1 = a^-1\n")
    assert str(P.relators[0]) == "t a t^-1 a"


def test_identity_substitution_passes():
    P = gl2_presentation()
    assert verify_substitution(P, P, {}, {}, gl2_assignment()).passed


def test_alpha_substitution_level_two():
    # g1 = x1 x2 with trivial lower part, realized in H(2)
    B = basis(F2)
    g = TowerElement(1, F2.parse("x1 x2"), B.identity)
    P_old = mapping_torus_presentation(2, g)
    P_new = mapping_torus_alpha(2, g)
    A = level_two(g)
    rep = verify_substitution(P_old, P_new, {"t": "x1 x2 alpha"}, {"alpha": "x2^-1 x1^-1 t"}, A)
    assert rep.passed, rep.failures()


def test_substitution_is_symmetric():
    B = basis(F2)
    g = TowerElement(1, F2.parse("x1 x2"), B.identity)
    P_old = mapping_torus_presentation(2, g)
    P_new = mapping_torus_alpha(2, g)
    A = level_two(g)
    fwd = {"alpha": "x2^-1 x1^-1 t"}
    back = {"t": "x1 x2 alpha"}
    assert verify_substitution(P_old, P_new, back, fwd, A).passed
    A2 = induced_assignment(P_new, fwd, P_old, A)
    assert verify_substitution(P_new, P_old, fwd, back, A2).passed


def test_wrong_substitution_fails():
    B = basis(F2)
    g = TowerElement(1, F2.parse("x1 x2"), B.identity)
    A = level_two(g)
    rep = verify_substitution(mapping_torus_presentation(2, g), mapping_torus_alpha(2, g),
                              {"t": "x1 x2 alpha"}, {"alpha": "x1^-1 x2^-1 t"}, A)
    assert not rep.passed


def test_xi_substitution_case_one():
    n, k = 3, 2
    A = appendix_free_assignment(n, k)
    back = {"t2": f"x2^{k} xi"}
    fwd = {"xi": f"x2^{-k} t2"}
    assert verify_substitution(npc_z2_free(n, k), npc_z2_free_xi(n, k), back, fwd, A).passed


def test_mapping_torus_amalgam_level_two():
    B = basis(F2)
    g = TowerElement(1, F2.parse("x1 x2^2"), B.p)
    P = mapping_torus_alpha(2, g)
    H, Z2 = mapping_torus_split(2, g)
    A = induced_assignment(P, {"alpha": "x2^-2 x1^-1 t"}, mapping_torus_presentation(2, g),
                           level_two(g))
    assert verify_amalgam(P, H, Z2, ["alpha"], A).passed


def test_degenerate_amalgam():
    P = gl2_presentation()
    edge = Presentation.build("P", ["P^2"])
    assert verify_amalgam(P, P, edge, ["P"], gl2_assignment()).passed
    # factor1 missing X: uncovered generator
    rep = verify_amalgam(P, Presentation.build("P Y", ["P^2"]), edge, ["P"], gl2_assignment())
    assert not rep.passed


def test_raag_check():
    assert raag_check(general_core(4))
    assert raag_check(Presentation.build("a b c", []))
    assert not raag_check(Presentation.build("a b", ["a^2"]))
    assert not raag_check(Presentation.build("a b", ["a b a^-1 b"]))
    assert not raag_check(Presentation.build("a", ["a a a^-1 a^-1"]))


def test_report_json():
    rep = check_relators(gl2_presentation(), gl2_assignment())
    d = rep.to_json()
    assert d["passed"] is True
    assert all(set(e) == {"relator", "status"} for e in d["entries"])
    bad = check_relators(Presentation.build("P", ["P"]), gl2_assignment()).to_json()
    assert bad["entries"][0]["status"] == "fail" and "witness" in bad["entries"][0]
