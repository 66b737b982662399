"""Triangular norms on [0, 1] and their dual conorms.

The four classical t-norms are built in; ``custom`` wraps any two-place
function for counterexample hunting in the axiom suite.  The conorm is
always derived through the duality T*(a, b) = 1 - T(1-a, 1-b).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .report import AxiomReport, CheckAccumulator

MINIMUM = "minimum"
PRODUCT = "product"
LUKASIEWICZ = "lukasiewicz"
DRASTIC = "drastic"
CUSTOM = "custom"

BUILTIN_KINDS = (MINIMUM, PRODUCT, LUKASIEWICZ, DRASTIC)

# CLI / config aliases
_ALIASES = {
    "min": MINIMUM,
    "prod": PRODUCT,
    "luk": LUKASIEWICZ,
    "drastic": DRASTIC,
    MINIMUM: MINIMUM,
    PRODUCT: PRODUCT,
    LUKASIEWICZ: LUKASIEWICZ,
}


def _drastic(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.where(b == 1.0, a, np.where(a == 1.0, b, 0.0))
    return out


_TABLE = {
    MINIMUM: np.minimum,
    PRODUCT: lambda a, b: np.asarray(a, dtype=float) * np.asarray(b, dtype=float),
    LUKASIEWICZ: lambda a, b: np.maximum(
        np.asarray(a, dtype=float) + np.asarray(b, dtype=float) - 1.0, 0.0
    ),
    DRASTIC: _drastic,
}


@dataclass(frozen=True)
class TNorm:
    kind: str
    fn: object = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS + (CUSTOM,):
            raise ValueError(f"unknown t-norm kind {self.kind!r}")
        if self.kind == CUSTOM and self.fn is None:
            raise ValueError("custom t-norm requires a function")

    def __call__(self, a, b):
        fn = _TABLE[self.kind] if self.kind != CUSTOM else self.fn
        return fn(a, b)

    def label(self) -> str:
        return self.name or self.kind


def tnorm(name: str) -> TNorm:
    """Look up a built-in t-norm by name or CLI alias."""
    try:
        return TNorm(_ALIASES[name])
    except KeyError:
        raise ValueError(f"unknown t-norm {name!r}") from None


def custom(fn, name="custom") -> TNorm:
    return TNorm(CUSTOM, fn=fn, name=name)


def _validate(*vals):
    for v in vals:
        arr = np.asarray(v, dtype=float)
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError(f"t-norm arguments must lie in [0, 1], got {v}")


def apply(t: TNorm, a, b):
    """T(a, b) with range validation."""
    _validate(a, b)
    out = t(a, b)
    return float(out) if np.ndim(a) == 0 and np.ndim(b) == 0 else out


def conorm(t: TNorm, a, b):
    """The dual t-conorm: 1 - T(1-a, 1-b)."""
    _validate(a, b)
    out = 1.0 - t(1.0 - np.asarray(a, dtype=float), 1.0 - np.asarray(b, dtype=float))
    return float(out) if np.ndim(a) == 0 and np.ndim(b) == 0 else out


def _dyadic(rng, n, denom=1024):
    # Sampling from a dyadic grid keeps every builtin operation exact in
    # binary floating point, so the suite can demand equality outright.
    return rng.integers(0, denom + 1, size=n) / denom


def tnorm_axiom_suite(t: TNorm, trials: int, seed: int) -> AxiomReport:
    """Randomized check of associativity, commutativity, monotonicity in
    each slot, and the unit law, all with zero tolerance."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    assoc = CheckAccumulator("associativity")
    comm = CheckAccumulator("commutativity")
    mono1 = CheckAccumulator("monotone_first")
    mono2 = CheckAccumulator("monotone_second")
    unit = CheckAccumulator("unit")
    for _ in range(trials):
        a, b, c = _dyadic(rng, 3)
        lhs = float(t(t(a, b), c))
        rhs = float(t(a, t(b, c)))
        assoc.record(-abs(lhs - rhs), {"a": a, "b": b, "c": c, "lhs": lhs, "rhs": rhs})
        ab = float(t(a, b))
        ba = float(t(b, a))
        comm.record(-abs(ab - ba), {"a": a, "b": b, "ab": ab, "ba": ba})
        lo, hi = min(a, c), max(a, c)
        mono1.record(float(t(hi, b)) - float(t(lo, b)), {"lo": lo, "hi": hi, "b": b})
        mono2.record(float(t(b, hi)) - float(t(b, lo)), {"lo": lo, "hi": hi, "b": b})
        unit.record(-abs(float(t(a, 1.0)) - a), {"a": a, "t(a,1)": float(t(a, 1.0))})
    report = AxiomReport(
        title=f"t-norm axioms: {t.label()}",
        seed=seed,
        config={"trials": trials, "tnorm": t.label()},
    )
    report.checks = [acc.done() for acc in (assoc, comm, mono1, mono2, unit)]
    return report
