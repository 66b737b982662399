"""The Sibley metric on distribution functions.

For h in (0, 1] the two-sided condition requires
``F(x-h) - h <= G(x) <= F(x+h) + h`` for every x in (-1/h, 1/h].  The
distance is the infimum of the h for which the condition holds in both
argument orders.  Feasibility is monotone in h (the lower envelope
decreases, the upper one increases, and the window shrinks), so a binary
search brackets the infimum; the returned value is the smallest h known
feasible, so it over-reports by at most the search tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distfn import DistFn


@dataclass(frozen=True)
class SibleyParams:
    """Search tolerance for the infimum over h."""

    tol: float = 1e-9

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


def check_points(f: DistFn, g: DistFn, h: float) -> np.ndarray:
    """The finitely many x at which the shift condition can change.

    Kinks of x -> f(x-h) sit at breakpoints of f shifted by +h, kinks of
    x -> f(x+h) at -h, plus g's own breakpoints and the window endpoints.
    Between consecutive points every term is affine, so testing values and
    right limits at these points decides the condition exactly.
    """
    w = 1.0 / h
    pts = np.concatenate([g.xs, f.xs + h, f.xs - h, [-w, w]])
    pts = pts[(pts >= -w) & (pts <= w)]
    return np.unique(pts)


def _one_sided(f: DistFn, g: DistFn, h: float) -> bool:
    """F(x-h) - h <= G(x) <= F(x+h) + h on (-1/h, 1/h]."""
    w = 1.0 / h
    xs = check_points(f, g, h)
    inner = xs[xs > -w]  # window is open on the left
    if len(inner):
        gv = g.eval(inner)
        if np.any(f.eval(inner - h) - h > gv) or np.any(gv > f.eval(inner + h) + h):
            return False
    right = xs[xs < w]  # right limits only matter strictly inside
    if len(right):
        gv = g.eval_right(right)
        if np.any(f.eval_right(right - h) - h > gv) or np.any(gv > f.eval_right(right + h) + h):
            return False
    return True


def condition_holds(f: DistFn, g: DistFn, h: float) -> bool:
    """The one-sided shift condition for the given h in (0, 1]."""
    if not 0.0 < h <= 1.0:
        raise ValueError(f"h must lie in (0, 1], got {h}")
    return _one_sided(f, g, h)


def _feasible(f: DistFn, g: DistFn, h: float) -> bool:
    return _one_sided(f, g, h) and _one_sided(g, f, h)


def _unit_step_position(f: DistFn):
    """If f is a canonical single unit step at a, return a, else None."""
    if f.interpolation == "step" and len(f.xs) == 1:
        if f.left_tail == 0.0 and f.ps[0] == 1.0:
            return float(f.xs[0])
    return None


def _unit_step_distance(a: float, b: float) -> float:
    # Derived from the shift condition: with a <= b the condition fails
    # exactly while the window (a, min(b - h, 1/h)] is nonempty, so the
    # infimum is b - a unless the 1/h cutoff hides the gap first.
    lo, hi = sorted((a, b))
    cap = 1.0 / lo if lo > 0 else np.inf
    return float(min(hi - lo, cap, 1.0))


def distance(f: DistFn, g: DistFn, params: SibleyParams | None = None) -> float:
    """Sibley distance, bracketed to within ``params.tol`` from above."""
    params = params or SibleyParams()
    a = _unit_step_position(f)
    b = _unit_step_position(g)
    if a is not None and b is not None:
        return _unit_step_distance(a, b)
    if not _feasible(f, g, 1.0):
        raise AssertionError("h = 1 must always be feasible for [0,1]-valued d.f.s")
    lo, hi = 0.0, 1.0
    steps = int(np.ceil(np.log2(1.0 / params.tol)))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if _feasible(f, g, mid):
            hi = mid
        else:
            lo = mid
    return hi
