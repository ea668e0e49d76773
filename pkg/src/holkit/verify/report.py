"""Suite parameters and reports.

Reports serialize to ``{suite, params, checks, passed, wall_ms, notes}`` with
sorted keys and checks sorted by name, so two runs with the same parameters
produce byte-identical JSON apart from ``wall_ms``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from typing import Any, Iterable


@dataclass(frozen=True)
class SuiteParams:
    """Bounds for one suite run.  ``None`` fields take the suite's default."""

    radius: int | None = None
    n: int | None = None
    K: tuple[int, ...] = (-3, -2, -1, 1, 2, 3)
    samples: int | None = None
    seed: int = 0
    cap: int = 64

    def __post_init__(self):
        if self.radius is not None and self.radius < 1:
            raise ValueError("radius must be >= 1")
        if 0 in self.K:
            raise ValueError("0 is not an allowed exponent in K")
        if not self.K:
            raise ValueError("K must not be empty")
        if self.samples is not None and self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")
        object.__setattr__(self, "K", tuple(self.K))

    def resolved(self, **defaults) -> "SuiteParams":
        """Fill unset fields from ``defaults``."""
        changes = {k: v for k, v in defaults.items() if getattr(self, k) is None}
        return replace(self, **changes)

    def to_json(self) -> dict:
        return {
            "K": list(self.K),
            "cap": self.cap,
            "n": self.n,
            "radius": self.radius,
            "samples": self.samples,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class SuiteReport:
    suite: str
    params: SuiteParams
    checks: list[Check] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    wall_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        """Record a check.  Failures always carry a witness."""
        if passed:
            witness = None
        elif witness is None or witness == "":
            witness = "check failed"
        self.checks.append(Check(name, bool(passed), None if witness is None else str(witness)))
        return bool(passed)

    def add_all(self, name: str, results: Iterable[tuple[bool, Any]]) -> bool:
        """One check summarizing many; the witness is the first failure."""
        count = 0
        for ok, witness in results:
            count += 1
            if not ok:
                return self.add(name, False, witness)
        return self.add(name, True)

    def extend(self, prefix: str, report) -> bool:
        """Fold a :class:`~holkit.presentations.CheckReport` into one check."""
        failures = report.failures()
        if failures:
            f = failures[0]
            return self.add(prefix, False, f"{f.relator}: {f.witness}")
        return self.add(prefix, True)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, with_time: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "params": self.params.to_json(),
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "passed": self.passed,
            "notes": self.notes,
        }
        if with_time:
            d["wall_ms"] = self.wall_ms
        return d

    def dumps(self, with_time: bool = True) -> str:
        return json.dumps(self.to_json(with_time), sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks, {self.wall_ms} ms)"]
        for c in sorted(self.checks, key=lambda c: c.name):
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.name}"
            if c.witness is not None:
                line += f"  -- witness: {c.witness}"
            lines.append(line)
        for k in sorted(self.notes):
            lines.append(f"  note {k}: {json.dumps(self.notes[k], sort_keys=True, ensure_ascii=False)}")
        return "\n".join(lines)


class timed:
    """Context manager stamping ``wall_ms`` on a report."""

    def __init__(self, report: SuiteReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_ms = int(round((time.perf_counter() - self.t0) * 1000))
        return False


EVIDENCE = "evidence: "


@dataclass(frozen=True)
class CommutantClass:
    """Shape of an element commuting with ``t1``.

    ``free-part-power`` is ``x2^k``; ``aut-conjugate-form`` is
    ``x1 -> x2^k x1^e1 x2^-k, x2 -> x2^e2``.
    """

    tag: str
    k: int | None = None
    signs: tuple[int, int] | None = None

    TAGS = ("free-part-power", "aut-conjugate-form", "unclassified")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.tag == "free-part-power" and not self.k:
            raise ValueError("free-part-power needs k != 0")
        if self.tag == "aut-conjugate-form" and (self.k is None or self.signs is None):
            raise ValueError("aut-conjugate-form needs k and two signs")

    def __str__(self):
        if self.tag == "free-part-power":
            return f"free-part-power(k={self.k})"
        if self.tag == "aut-conjugate-form":
            e1, e2 = self.signs
            return f"aut-conjugate-form(k={self.k}, {e1:+d}, {e2:+d})"
        return "unclassified"
