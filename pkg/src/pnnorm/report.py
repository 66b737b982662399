"""Report containers for the randomized axiom suites.

Every suite returns an :class:`AxiomReport` listing one :class:`AxiomCheck`
per axiom.  Margins are signed: positive means the axiom held with that
much slack in the worst trial, negative means it failed by that much, and
a failing check always carries a reproducible counterexample.

Serialization renders every float with 12 fixed decimal digits so reports
from identical seeds are byte-identical and diffable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    trials: int
    worst_margin: float
    counterexample: dict | None = None

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "worst_margin": self.worst_margin,
            "counterexample": self.counterexample,
        }


@dataclass
class AxiomReport:
    title: str
    seed: int
    checks: list[AxiomCheck] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "title": self.title,
            "seed": self.seed,
            "passed": self.passed,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary_lines(self):
        lines = [f"{self.title} (seed {self.seed})"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name}: margin {format_float(c.worst_margin)}")
        return lines


def format_float(v: float) -> str:
    return f"{float(v):.12f}"


class _FixedFloat(float):
    def __repr__(self):
        return format_float(self)


def _fix(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _FixedFloat(obj)
    if isinstance(obj, dict):
        return {k: _fix(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fix(v) for v in obj]
    return obj


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, fixed 12-digit floats, newline end."""
    return json.dumps(_fix(obj), sort_keys=True, indent=2) + "\n"


class CheckAccumulator:
    """Tracks the worst margin and first counterexample for one axiom."""

    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.worst = float("inf")
        self.counterexample = None

    def record(self, margin: float, witness=None):
        self.trials += 1
        if margin < self.worst:
            self.worst = margin
            if margin < 0 and self.counterexample is None and witness is not None:
                self.counterexample = witness
        if margin < 0 and self.counterexample is None and witness is not None:
            self.counterexample = witness

    def done(self) -> AxiomCheck:
        passed = self.worst >= 0
        worst = self.worst if self.trials else 0.0
        return AxiomCheck(self.name, passed, self.trials, worst,
                          None if passed else self.counterexample)
