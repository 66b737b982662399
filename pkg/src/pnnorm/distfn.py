"""Left-continuous distribution functions with finite breakpoint lists.

Two interpolation modes cover everything the toolkit needs: ``step`` for
pure jump functions (unit steps, simple-space outputs) and ``linear`` for
sampled continuous families (the ratio family t/(t+c)).  Closed-form
evaluators for the two families live here too, so axiom checkers can work
algebraically instead of through the discretization.
"""

from __future__ import annotations

import enum
import json

import numpy as np

STEP = "step"
LINEAR = "linear"


class DistFnError(ValueError):
    """Malformed distribution-function data (construction or JSON load)."""


class DfClass(enum.Enum):
    NOT_DF = "not_df"
    DELTA = "delta"
    DELTA_PLUS = "delta_plus"
    D_PLUS = "d_plus"

    def at_least(self, other: "DfClass") -> bool:
        """True if this class implies ``other`` in the chain D+ < Delta+ < Delta."""
        order = [DfClass.NOT_DF, DfClass.DELTA, DfClass.DELTA_PLUS, DfClass.D_PLUS]
        return order.index(self) >= order.index(other)


class DistFn:
    """A nondecreasing, left-continuous map from the reals into [0, 1].

    For ``step`` interpolation ``ps[i]`` is the value on the half-open
    interval (xs[i], xs[i+1]]; the value jumps strictly after each
    breakpoint, so evaluation at a breakpoint returns the pre-jump level.
    For ``linear`` interpolation ``ps[i]`` is the value at ``xs[i]`` and
    the function interpolates between breakpoints.

    ``left_tail`` is the value at and below the first breakpoint.
    ``right_tail`` is the value strictly above the last breakpoint; for
    step forms it must equal the last level (the representation would
    otherwise make two claims about the same interval), while linear forms
    may jump up to it just after the last breakpoint (tail extrapolation).
    """

    __slots__ = ("interpolation", "xs", "ps", "left_tail", "right_tail")

    def __init__(self, breakpoints, interpolation=STEP, left_tail=0.0, right_tail=None):
        if interpolation not in (STEP, LINEAR):
            raise DistFnError(f"unknown interpolation {interpolation!r}")
        pts = [(float(x), float(p)) for x, p in breakpoints]
        left_tail = float(left_tail)
        if not 0.0 <= left_tail <= 1.0:
            raise DistFnError(f"left_tail {left_tail} outside [0, 1]")
        for i, (x, p) in enumerate(pts):
            if not np.isfinite(x):
                raise DistFnError(f"breakpoint {i}: non-finite abscissa {x}")
            if not 0.0 <= p <= 1.0:
                raise DistFnError(f"breakpoint {i}: probability {p} outside [0, 1]")
            if i > 0 and x <= pts[i - 1][0]:
                raise DistFnError(f"breakpoint {i}: abscissa {x} not strictly increasing")
            if i > 0 and p < pts[i - 1][1]:
                raise DistFnError(f"breakpoint {i}: probability {p} decreases")
        if pts and left_tail > pts[0][1]:
            raise DistFnError(f"left_tail {left_tail} exceeds first breakpoint value {pts[0][1]}")

        pts = _canonical(pts, interpolation, left_tail)

        if right_tail is None:
            right_tail = pts[-1][1] if pts else left_tail
        right_tail = float(right_tail)
        if not 0.0 <= right_tail <= 1.0:
            raise DistFnError(f"right_tail {right_tail} outside [0, 1]")
        last = pts[-1][1] if pts else left_tail
        if right_tail < last:
            raise DistFnError(f"right_tail {right_tail} below last value {last}")
        if interpolation == STEP and pts and right_tail != pts[-1][1]:
            raise DistFnError("step form requires right_tail equal to the last level")
        if not pts and right_tail != left_tail:
            raise DistFnError("empty breakpoint list requires equal tails")

        xs = np.asarray([x for x, _ in pts], dtype=float)
        ps = np.asarray([p for _, p in pts], dtype=float)
        xs.setflags(write=False)
        ps.setflags(write=False)
        self.interpolation = interpolation
        self.xs = xs
        self.ps = ps
        self.left_tail = left_tail
        self.right_tail = right_tail

    # -- evaluation ---------------------------------------------------

    def eval(self, x):
        """Left-continuous value at ``x`` (scalar or array)."""
        return self._eval(x, right=False)

    def eval_right(self, x):
        """Right limit at ``x``, i.e. the value just after ``x``."""
        return self._eval(x, right=True)

    def _eval(self, x, right):
        x_arr = np.asarray(x, dtype=float)
        scalar = x_arr.ndim == 0
        x_arr = np.atleast_1d(x_arr)
        out = np.empty_like(x_arr)
        if len(self.xs) == 0:
            out.fill(self.left_tail)
            return float(out[0]) if scalar else out
        side = "right" if right else "left"
        idx = np.searchsorted(self.xs, x_arr, side=side)
        if self.interpolation == STEP:
            below = idx == 0
            out = np.where(below, self.left_tail, self.ps[np.maximum(idx - 1, 0)])
        else:
            below = idx == 0
            above = idx == len(self.xs)
            mid = ~below & ~above
            out = np.empty_like(x_arr)
            out[below] = self.left_tail
            out[above] = self.right_tail
            if np.any(mid):
                j = idx[mid]
                x0 = self.xs[j - 1]
                x1 = self.xs[j]
                p0 = self.ps[j - 1]
                p1 = self.ps[j]
                t = (x_arr[mid] - x0) / (x1 - x0)
                out[mid] = p0 + t * (p1 - p0)
        return float(out[0]) if scalar else out

    # -- plumbing -----------------------------------------------------

    def breakpoints(self):
        return list(zip(self.xs.tolist(), self.ps.tolist()))

    def __eq__(self, other):
        if not isinstance(other, DistFn):
            return NotImplemented
        return (
            self.interpolation == other.interpolation
            and self.left_tail == other.left_tail
            and self.right_tail == other.right_tail
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.ps, other.ps)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"DistFn({self.interpolation}, {len(self.xs)} breakpoints, "
            f"tails {self.left_tail:g}/{self.right_tail:g})"
        )

    def to_dict(self):
        return {
            "interpolation": self.interpolation,
            "breakpoints": [[x, p] for x, p in self.breakpoints()],
            "left_tail": self.left_tail,
            "right_tail": self.right_tail,
        }


def _canonical(pts, interpolation, left_tail):
    """Merge redundant breakpoints (no-op jumps, flat interior runs)."""
    if interpolation == STEP:
        out = []
        level = left_tail
        for x, p in pts:
            if p != level:
                out.append((x, p))
                level = p
        return out
    out = []
    for i, (x, p) in enumerate(pts):
        if 0 < i < len(pts) - 1 and pts[i - 1][1] == p == pts[i + 1][1]:
            continue
        out.append((x, p))
    return out


# -- constructors ------------------------------------------------------


def unit_step() -> DistFn:
    """The maximal element of the nonnegative class: 0 on (-inf, 0], 1 after."""
    return DistFn([(0.0, 1.0)], STEP)


def step_at(a: float) -> DistFn:
    """Unit step at ``a >= 0``: 0 for x <= a, 1 for x > a."""
    a = float(a)
    if a < 0:
        raise DistFnError(f"step_at requires a >= 0, got {a}")
    return DistFn([(a, 1.0)], STEP)


def ratio_df(c: float, resolution: int) -> DistFn:
    """Piecewise-linear sampling of t -> t/(t+c) for t > 0.

    Samples at the quantile grid k/resolution, which bounds the sup-norm
    discretization error by 1/resolution and stretches the grid out to
    t = (resolution-1)*c.  The raw form tops out below 1; callers that
    need a member of the full-limit class extend the tail explicitly via
    :func:`with_right_tail`.
    """
    c = float(c)
    if c < 0:
        raise DistFnError(f"ratio_df requires c >= 0, got {c}")
    n = int(resolution)
    if n < 2:
        raise DistFnError(f"resolution must be >= 2, got {resolution}")
    if c == 0.0:
        return unit_step()
    pts = [(c * k / (n - k), k / n) for k in range(n)]
    return DistFn(pts, LINEAR)


def with_right_tail(f: DistFn, p: float) -> DistFn:
    """Copy of ``f`` with the tail value above the last breakpoint set to ``p``."""
    return DistFn(f.breakpoints(), f.interpolation, f.left_tail, p)


def ratio_eval(c: float, t) -> float:
    """Exact value of the ratio family: t/(t+c) for t > 0, else 0."""
    t_arr = np.asarray(t, dtype=float)
    if c == 0.0:
        out = np.where(t_arr > 0, 1.0, 0.0)
    else:
        out = np.where(t_arr > 0, t_arr / (t_arr + c), 0.0)
    return float(out) if np.ndim(t) == 0 else out


def ratio_quantile(c: float, p: float) -> float:
    """Exact generalized inverse of the ratio family: solve t/(t+c) = p."""
    if not 0.0 <= p <= 1.0:
        raise DistFnError(f"probability {p} outside [0, 1]")
    if p == 1.0:
        return np.inf if c > 0 else 0.0
    return c * p / (1.0 - p)


# -- operations --------------------------------------------------------


def scale_arg(f: DistFn, lam: float) -> DistFn:
    """The function x -> f(x / |lam|); breakpoints scale exactly by |lam|."""
    lam = float(lam)
    if lam == 0.0:
        raise DistFnError("scale_arg requires a nonzero factor")
    s = abs(lam)
    pts = [(x * s, p) for x, p in f.breakpoints()]
    return DistFn(pts, f.interpolation, f.left_tail, f.right_tail)


def leq(f: DistFn, g: DistFn) -> bool:
    """Pointwise order: f(x) <= g(x) for all x."""
    return leq_within(f, g, 0.0)


def leq_within(f: DistFn, g: DistFn, margin: float) -> bool:
    """Pointwise order with slack: f(x) <= g(x) + margin everywhere.

    Decided exactly on the union of breakpoints plus right limits; between
    those points both sides are affine, so endpoint checks suffice.
    """
    if f.left_tail > g.left_tail + margin or f.right_tail > g.right_tail + margin:
        return False
    cands = np.unique(np.concatenate([f.xs, g.xs]))
    if len(cands) == 0:
        return True
    if np.any(f.eval(cands) > g.eval(cands) + margin):
        return False
    if np.any(f.eval_right(cands) > g.eval_right(cands) + margin):
        return False
    return True


def classify(f: DistFn) -> DfClass:
    """Classification chain: valid d.f. with zero lower tail, then value 0
    at the origin, then finite-x limit 1 at the top."""
    ps = f.ps
    if len(ps) and (np.any(ps < 0) or np.any(ps > 1) or np.any(np.diff(ps) < 0)):
        return DfClass.NOT_DF
    if not 0.0 <= f.left_tail <= 1.0 or not 0.0 <= f.right_tail <= 1.0:
        return DfClass.NOT_DF
    if len(ps) and (f.left_tail > ps[0] or ps[-1] > f.right_tail):
        return DfClass.NOT_DF
    if f.left_tail != 0.0:
        return DfClass.NOT_DF
    if f.eval(0.0) != 0.0:
        return DfClass.DELTA
    if f.right_tail != 1.0:
        return DfClass.DELTA_PLUS
    return DfClass.D_PLUS


# -- JSON interchange --------------------------------------------------


def from_dict(data) -> DistFn:
    """Build a DistFn from the JSON dict format, with position-specific errors."""
    if not isinstance(data, dict):
        raise DistFnError("distribution function JSON must be an object")
    for key in ("interpolation", "breakpoints"):
        if key not in data:
            raise DistFnError(f"missing field {key!r}")
    interpolation = data["interpolation"]
    raw = data["breakpoints"]
    if not isinstance(raw, list) or not raw:
        raise DistFnError("breakpoints must be a non-empty list")
    pts = []
    for i, pair in enumerate(raw):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DistFnError(f"breakpoint {i}: expected [x, p] pair")
        try:
            pts.append((float(pair[0]), float(pair[1])))
        except (TypeError, ValueError):
            raise DistFnError(f"breakpoint {i}: non-numeric entry {pair!r}") from None
    return DistFn(
        pts,
        interpolation,
        data.get("left_tail", 0.0),
        data.get("right_tail"),
    )


def loads(text: str) -> DistFn:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DistFnError(f"invalid JSON: {exc}") from None
    return from_dict(data)


def dumps(f: DistFn) -> str:
    return json.dumps(f.to_dict())


def load_file(path) -> DistFn:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(f: DistFn, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(f))
        fh.write("\n")


# -- random generation (used by the randomized axiom suites) ------------


def random_step(rng, max_jumps=6, lo=0.0, hi=1.5, top=1.0) -> DistFn:
    """Random step d.f. with support in [lo, hi] and final level ``top``."""
    k = int(rng.integers(1, max_jumps + 1))
    xs = np.unique(rng.uniform(lo, hi, size=k))
    ps = np.sort(rng.uniform(0.0, 1.0, size=len(xs)))
    ps[-1] = top
    return DistFn(list(zip(xs.tolist(), ps.tolist())), STEP)
