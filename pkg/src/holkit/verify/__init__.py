"""Named verification suites.  Each returns a :class:`SuiteReport`."""
from __future__ import annotations

from .algebra import (
    classify_aut,
    classify_free,
    presentation_controls,
    suite_autf2_presentation,
    suite_commuting_with_t1,
    suite_finite_orders,
    suite_normalizer_d4,
)
from .report import Check, CommutantClass, SuiteParams, SuiteReport
from .rewrite import suite_appendix_cases, suite_fp, suite_general_amalgam, suite_mapping_torus

SUITES = {
    "suite_autf2_presentation": suite_autf2_presentation,
    "suite_normalizer_d4": suite_normalizer_d4,
    "suite_commuting_with_t1": suite_commuting_with_t1,
    "suite_mapping_torus": suite_mapping_torus,
    "suite_general_amalgam": suite_general_amalgam,
    "suite_appendix_cases": suite_appendix_cases,
    "suite_fp": suite_fp,
    "suite_finite_orders": suite_finite_orders,
}

# one built-in negative control per suite
CONTROLS = {
    "suite_autf2_presentation": "swap-x",
    "suite_normalizer_d4": "d2",
    "suite_commuting_with_t1": "wrong-t1",
    "suite_mapping_torus": "wrong-alpha",
    "suite_general_amalgam": "literal-z-relators",
    "suite_appendix_cases": "wrong-zeta",
    "suite_fp": "left-action",
    "suite_finite_orders": "z-from-hol",
}


def suite_by_name(name: str):
    key = name if name.startswith("suite_") else f"suite_{name}"
    if key not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return key, SUITES[key]


def run_suite(name: str, params: SuiteParams | None = None, control: str | None = None) -> SuiteReport:
    key, fn = suite_by_name(name)
    return fn(params or SuiteParams(), control=control)


__all__ = [
    "SUITES", "CONTROLS", "Check", "CommutantClass", "SuiteParams", "SuiteReport",
    "classify_aut", "classify_free", "presentation_controls", "run_suite", "suite_by_name",
    *SUITES,
]
