"""Suites that realize presentations in the tower and certify the
generator changes and amalgam splittings on those realizations."""
from __future__ import annotations

import random

from ..autf2 import BEYOND_CAP, basis, order_of
from ..extensions import HolElement, TowerElement, random_tower_element, random_word, section
from ..fixtures import (
    CASE_SIGNS,
    D_CHOICES,
    F2X,
    d_infinity,
    fp_presentation,
    general_core,
    general_factors,
    general_presentation,
    general_substituted,
    lemma_split,
    lemma_t2_form,
    lemma_xi_form,
    mapping_torus_alpha,
    mapping_torus_beta,
    mapping_torus_presentation,
    mapping_torus_split,
    npc_z2_aut,
    npc_z2_aut_split,
    npc_z2_free,
    npc_z2_free_split,
    npc_z2_free_xi,
    npc_z2_free_zeta,
    t2_automorphism,
    z2_by_z2,
)
from ..morphisms import Automorphism
from ..presentations import (
    Assignment,
    CheckReport,
    Presentation,
    check_relators,
    induced_assignment,
    raag_check,
    verify_amalgam,
    verify_substitution,
)
from ..words import Alphabet
from .report import SuiteParams, SuiteReport, timed


def _first_failure(rep: CheckReport) -> str | None:
    f = rep.failures()
    return None if not f else f"{f[0].relator}: {f[0].witness}"


class _Phases:
    """Collects per-phase outcomes over many configurations; one check per
    phase, witnessed by the first failing configuration."""

    def __init__(self):
        self.results: dict[str, tuple[int, str | None]] = {}

    def record(self, phase: str, config: str, outcome) -> bool:
        if isinstance(outcome, CheckReport):
            ok, witness = outcome.passed, _first_failure(outcome)
        else:
            ok, witness = bool(outcome[0]), outcome[1]
        runs, first = self.results.get(phase, (0, None))
        if not ok and first is None:
            first = f"{config}: {witness or 'check failed'}"
        self.results[phase] = (runs + 1, first)
        return ok

    def flush(self, report: SuiteReport) -> None:
        for phase, (runs, first) in self.results.items():
            report.add(phase, first is None, first)
        report.notes["configurations_per_phase"] = {p: r for p, (r, _) in sorted(self.results.items())}


def _rename(A: Assignment, mapping: dict[str, str]) -> Assignment:
    return Assignment({mapping.get(k, k): v for k, v in A.items()}, A.identity)


# --- mapping tori ---------------------------------------------------------------

def _free_gens(level: int, count: int) -> dict:
    return {f"x{i}": TowerElement.free_generator(level, i) for i in range(1, count + 1)}


def mapping_torus_pipeline(n: int, g, phases: _Phases, config: str, control: str | None = None) -> None:
    """All phases for ``G_n`` with ``t`` realized through ``g``."""
    g1, g1i = str(g.free), str(~g.free)
    new_in_old = {"alpha": f"t {g1i}"} if control == "wrong-alpha" else {"alpha": f"{g1i} t"}
    if n == 1:
        A = Assignment({"t": g, **_free_gens(1, 2)})
        P = mapping_torus_presentation(1, g)
        phases.record("n=1: presentation", config, check_relators(P, A))
        phases.record("n=1: substitution alpha = g1^-1 t", config,
                      verify_substitution(P, mapping_torus_alpha(1, g), {"t": f"{g1} alpha"}, new_in_old, A))
        return
    A = Assignment({"t": section(g), **_free_gens(n, n + 1)})
    P = mapping_torus_presentation(n, g)
    phases.record(f"n={n}: presentation", config, check_relators(P, A))
    Pa = mapping_torus_alpha(n, g)
    phases.record(f"n={n}: substitution alpha = g1^-1 t", config,
                  verify_substitution(P, Pa, {"t": f"{g1} alpha"}, new_in_old, A))
    Aa = induced_assignment(Pa, new_in_old, P, A)
    H, Z2 = mapping_torus_split(n, g)
    phases.record(f"n={n}: amalgam H *_Z Z^2", config, verify_amalgam(Pa, H, Z2, ["alpha"], Aa))
    Hb = mapping_torus_beta(n, g)
    AH = Aa.restrict(H.generators)
    phases.record(f"n={n}: substitution beta = g1 alpha", config,
                  verify_substitution(H, Hb, {"alpha": f"{g1i} beta"}, {"beta": f"{g1} alpha"}, AH))
    lower = g.lower if n > 2 else TowerElement(1, F2X.identity(), g.lower)
    G_prev = mapping_torus_presentation(n - 1, lower)
    renamed = {str(r).replace("beta", "t") for r in Hb.relators}
    same = renamed == {str(r) for r in G_prev.relators}
    phases.record(f"n={n}: H equals G_{n - 1} for g2", config, (same, "relator sets differ"))
    prev_t = section(lower) if n > 2 else lower
    A_prev = Assignment({"t": prev_t, **_free_gens(n - 1, n)})
    phases.record(f"n={n}: G_{n - 1} realized one level down", config, check_relators(G_prev, A_prev))


def suite_mapping_torus(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """``G_n = F(n+1) ⋊ Z`` for random ``g`` and fixed examples.

    Levels are ``params.n`` or 1 to 5.  Control ``wrong-alpha`` substitutes
    ``alpha = t g1^-1``.
    """
    params = (params or SuiteParams()).resolved(samples=20)
    if control not in (None, "wrong-alpha"):
        raise ValueError(f"unknown control {control!r}")
    report = SuiteReport("suite_mapping_torus", params)
    with timed(report):
        B = basis(F2X)
        levels = [params.n] if params.n is not None else [1, 2, 3, 4, 5]
        if any(n < 1 for n in levels):
            raise ValueError("mapping tori need n >= 1")
        phases = _Phases()
        for n in levels:
            rng = random.Random(f"mapping-torus:{params.seed}:{n}")
            examples = [("identity", TowerElement.identity(max(n - 1, 1)))]
            if n == 3:
                examples.append(("g1 = x1 x2^2, g2 = p", TowerElement(2, Alphabet.numbered(3).parse("x1 x2^2"), TowerElement.of_aut(1, B.p))))
            for i in range(params.samples):
                examples.append((f"sample {i}", random_tower_element(rng, max(n - 1, 1), B.generators(), 6)))
            for label, g in examples:
                mapping_torus_pipeline(n, g, phases, f"n={n} {label} g={g}", control)
        phases.flush(report)
    return report


# --- the general amalgam --------------------------------------------------------

def general_assignment(n: int, D: str) -> Assignment:
    B = basis(F2X)
    auts = {"p": B.p, "x": B.x}
    images = _free_gens(n, n + 1)
    images["xi"] = section(TowerElement.of_word(n - 1, Alphabet.numbered(n).gen(n - 1)))
    for d in D_CHOICES[D][0]:
        images[d] = TowerElement.of_aut(n, auts[d])
    return Assignment(images)


def suite_general_amalgam(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """``F(n+1) ⋊ (Z × E(D))`` realized in ``H(n)`` for every ``D``.

    Control ``literal-z-relators`` uses ``[z, x_j] = 1`` (``j < n``) in the
    substituted presentation; those relators fail on the realization.
    """
    params = params or SuiteParams()
    if control not in (None, "literal-z-relators"):
        raise ValueError(f"unknown control {control!r}")
    report = SuiteReport("suite_general_amalgam", params)
    with timed(report):
        levels = [params.n] if params.n is not None else [3, 4, 5]
        if any(n < 3 for n in levels):
            raise ValueError("the general amalgam needs n >= 3")
        phases = _Phases()
        literal_failures = 0
        for n in levels:
            core = general_core(n)
            phases.record(f"n={n}: core is a RAAG", f"n={n}", (raag_check(core), str(core.relators)))
            for D in D_CHOICES:
                config = f"n={n} D={D}"
                A = general_assignment(n, D)
                G = general_presentation(n, D)
                phases.record(f"n={n}: presentation", config, check_relators(G, A))
                Gs = general_substituted(n, D, literal=control is not None)
                old_in_new = {f"x{n}": "xi z^-1"}
                new_in_old = {"z": f"x{n}^-1 xi"}
                phases.record(f"n={n}: substitution z = x{n}^-1 xi", config,
                              verify_substitution(G, Gs, old_in_new, new_in_old, A))
                As = induced_assignment(Gs, new_in_old, G, A)
                G1, G2, edge = general_factors(n, D)
                if control is None:
                    phases.record(f"n={n}: amalgam G1 *_(Z x E(D)) G2", config, verify_amalgam(Gs, G1, G2, edge, As))
                    phases.record(f"n={n}: core realized", config, check_relators(core, As.restrict(core.generators)))
                literal = check_relators(general_substituted(n, D, literal=True), As)
                literal_failures += len(literal.failures())
        phases.flush(report)
        report.notes["literal_z_relator_failures"] = literal_failures
    return report


# --- F_n ⋊ (Z x Z/2) cases ----------------------------------------------------

def appendix_aut_assignment(n: int, k: int, case: int) -> Assignment:
    """``G = F_n ⋊ (Z × Z/2)`` in ``H(n-1)`` with ``t2`` an automorphism."""
    B = basis(F2X)
    level = n - 1
    images = _free_gens(level, n)
    images["t1"] = TowerElement.of_aut(level, B.t1)
    images["t2"] = TowerElement.of_aut(level, t2_automorphism(k, *CASE_SIGNS[case]))
    return Assignment(images)


def appendix_free_assignment(n: int, k: int) -> Assignment:
    """``t2 = x2^k`` realized as ``(ε, c)`` with ``c`` conjugating by
    ``x2^k`` at every level above 1."""
    B = basis(F2X)
    level = n - 1
    c = TowerElement(1, F2X.parse(f"x2^{k}"), Automorphism.identity(F2X))
    for m in range(2, level):
        c = TowerElement(m, Alphabet.numbered(m + 1).parse(f"x2^{k}"), c)
    images = _free_gens(level, n)
    images["t1"] = TowerElement.of_aut(level, B.t1)
    images["t2"] = section(c)
    return Assignment(images)


def _lemma_split_phases(case: int, A: Assignment, phases: _Phases, tag: str, config: str) -> None:
    """Check ``G = L1 *_L L2`` with the D-infinity and ``Z^2 × Z/2`` pieces."""
    P = lemma_xi_form(case)
    L1, L2, edge = lemma_split(case)
    phases.record(f"{tag}: amalgam L1 *_L L2", config, verify_amalgam(P, L1, L2, edge, A))
    L = Presentation.build(["t1", "xi"], ["t1^2", "t1 xi t1^-1 xi^-1"], "L")
    phases.record(f"{tag}: L = Z x Z/2 relators", config, check_relators(L, A.restrict(L.generators)))
    phases.record(f"{tag}: D_inf relators in L2", config, check_relators(d_infinity(), A.restrict(["x1", "t1"])))
    if case == 1:
        phases.record(f"{tag}: Z^2 x Z/2 relators for L1", config, check_relators(z2_by_z2(), A.restrict(["x2", "t1", "xi"])))


def appendix_aut_pipeline(n: int, k: int, case: int, phases: _Phases, control: str | None = None) -> None:
    config = f"n={n} k={k}"
    tag = f"case {case} n={n}"
    A = appendix_aut_assignment(n, k, case)
    G = npc_z2_aut(n, k, case)
    phases.record(f"{tag}: presentation", config, check_relators(G, A))
    K1, K2, edge = npc_z2_aut_split(n, k, case)
    phases.record(f"{tag}: amalgam K1 *_K K2", config, verify_amalgam(G, K1, K2, edge, A))
    AK2 = A.restrict(K2.generators)
    sign = k if control == "wrong-zeta" else -k
    new_in_old = {"xi": f"x2^{sign} t2"}
    P_xi = lemma_xi_form(case)
    phases.record(f"{tag}: substitution xi = x2^-k t2", config,
                  verify_substitution(K2, P_xi, {"t2": f"x2^{-sign} xi"}, new_in_old, AK2))
    A_xi = induced_assignment(P_xi, new_in_old, K2, AK2)
    if case in (2, 4):
        target = case - 1
        P_new = lemma_xi_form(target)
        # the new xi is xi2 = t1 xi
        phases.record(f"{tag}: substitution xi2 = t1 xi", config,
                      verify_substitution(P_xi, P_new, {"xi": "t1^-1 xi"}, {"xi": "t1 xi"}, A_xi))
        A_xi = induced_assignment(P_new, {"xi": "t1 xi"}, P_xi, A_xi)
        other = appendix_aut_assignment(n, k, target)
        expected = other["x2"] ** (-k) * other["t2"]
        phases.record(f"{tag}: induced assignment equals case {target}", config,
                      (A_xi["xi"] == expected, f"{A_xi['xi']} != {expected}"))
        case = target
    _lemma_split_phases(case, A_xi, phases, tag, config)


def appendix_free_pipeline(n: int, k: int, phases: _Phases, control: str | None = None) -> None:
    config = f"n={n} k={k}"
    tag = f"t2 = x2^k n={n}"
    A = appendix_free_assignment(n, k)
    G = npc_z2_free(n, k)
    phases.record(f"{tag}: presentation", config, check_relators(G, A))
    P_xi = npc_z2_free_xi(n, k)
    new_in_old = {"xi": f"x2^{-k} t2"}
    phases.record(f"{tag}: substitution xi = x2^-k t2", config,
                  verify_substitution(G, P_xi, {"t2": f"x2^{k} xi"}, new_in_old, A))
    A_xi = induced_assignment(P_xi, new_in_old, G, A)
    K1, K2, edge = npc_z2_free_split(n, k)
    phases.record(f"{tag}: amalgam K1 *_K K2", config, verify_amalgam(P_xi, K1, K2, edge, A_xi))
    AK2 = A_xi.restrict(K2.generators)
    P_zeta = npc_z2_free_zeta()
    zeta = f"x2^{-k} xi" if control == "wrong-zeta" else f"x2^{k} xi"
    phases.record(f"{tag}: substitution zeta = x2^k xi", config,
                  verify_substitution(K2, P_zeta, {"xi": f"x2^{-k} zeta"}, {"zeta": zeta}, AK2))
    A_zeta = induced_assignment(P_zeta, {"zeta": zeta}, K2, AK2)
    _lemma_split_phases(1, _rename(A_zeta, {"zeta": "xi"}), phases, tag, config)


def suite_appendix_cases(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """The four sign cases for every ``k`` in ``K`` and ``n`` in 2 to 5 (or
    ``params.n``), plus the ``t2 = x2^k`` case for ``n >= 3``.

    Control ``wrong-zeta`` flips the sign of the power of ``x2`` in the
    first substitution.
    """
    params = params or SuiteParams()
    if control not in (None, "wrong-zeta"):
        raise ValueError(f"unknown control {control!r}")
    report = SuiteReport("suite_appendix_cases", params)
    with timed(report):
        levels = [params.n] if params.n is not None else [2, 3, 4, 5]
        if any(n < 2 for n in levels):
            raise ValueError("the sign cases need n >= 2")
        phases = _Phases()
        for n in levels:
            for k in params.K:
                for case in (1, 2, 3, 4):
                    appendix_aut_pipeline(n, k, case, phases, control)
                if n >= 3:
                    appendix_free_pipeline(n, k, phases, control)
        phases.flush(report)
    return report


# --- FP ---------------------------------------------------------------------------

F3 = Alphabet(("a1", "a2", "a3"))


def fp_assignment(control: str | None = None) -> Assignment:
    ident = Automorphism.identity(F3)
    images = {f"a{j}": HolElement(F3.gen(j - 1), ident) for j in (1, 2, 3)}
    for i in (1, 2):
        img = f"a{i} a3" if control == "left-action" else f"a3 a{i}"
        inv = f"a{i}^-1 a3" if control == "left-action" else f"a3 a{i}^-1"
        phi = Automorphism.from_strings(F3, ["a1", "a2", img], ["a1", "a2", inv])
        images[f"f{i}"] = HolElement(F3.identity(), phi)
    return Assignment(images)


def fp_tail(v: HolElement):
    """``c`` with ``v: a3 -> a3 c``, or ``None`` if ``v`` moves ``a1``/``a2``."""
    f = v.aut
    a1, a2, a3 = F3.gens()
    if f(a1) != a1 or f(a2) != a2:
        return None
    return ~a3 * f(a3)


def suite_fp(params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    """``F3 ⋊ F2`` realized in ``Hol(F3)``.

    Control ``left-action`` lets ``f_i`` send ``a3 -> a_i a3``.
    """
    params = (params or SuiteParams()).resolved(samples=100)
    if control not in (None, "left-action"):
        raise ValueError(f"unknown control {control!r}")
    report = SuiteReport("suite_fp", params)
    with timed(report):
        P = fp_presentation()
        A = fp_assignment(control)
        for i, res in enumerate(check_relators(P, A).entries):
            report.add(f"relator {i}: {res.relator}", res.passed, res.witness)
        f1, a1 = A["f1"], A["a1"]
        c = f1 * a1 * ~f1 * ~a1
        report.add("[f1, a1] = 1", c.is_identity(), str(c))
        o_f, o_a = order_of(f1, params.cap), order_of(a1, params.cap)
        report.add(f"f1 and a1 have infinite order (cap {params.cap})",
                   o_f is BEYOND_CAP and o_a is BEYOND_CAP, f"orders {o_f}, {o_a}")

        def tail_ok(v: HolElement):
            t = fp_tail(v)
            if t is None:
                return False, f"{v.aut} moves a1 or a2"
            return not (t.generators_used() & {2}), f"a3 -> a3 ({t})"

        words = Alphabet(("f1", "f2"))
        examples = {"f1": words.parse("f1"), "f2 f1^-1": words.parse("f2 f1^-1")}
        for name, w in examples.items():
            v = A.evaluate(w)
            ok, desc = tail_ok(v)
            report.add(f"v = {name}: a3 -> a3 c with c in <a1, a2>", ok, desc)
            report.notes[f"tail {name}"] = str(fp_tail(v)) if fp_tail(v) is not None else None
        report.add("v = f1 gives c = a1", fp_tail(A["f1"]) == F3.gen(0), str(fp_tail(A["f1"])))
        rng = random.Random(f"fp:{params.seed}")
        report.add_all(
            f"{params.samples} random v(f1, f2) of length <= 8 fix a1, a2 and send a3 -> a3 c",
            ((ok, f"v = {w}: {desc}") for w in (random_word(rng, words, 8) for _ in range(params.samples))
             for ok, desc in [tail_ok(A.evaluate(w))]),
        )
    return report
