"""Box-bounded, inequality-constrained problems and feasibility-first comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

FEASIBILITY_TOLERANCE = 1e-6
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class Problem:
    """Minimise ``objective(x)`` subject to ``g(x) <= 0`` for every g in ``constraints``.

    Coordinates flagged in ``integer_mask`` are rounded to the nearest
    integer before every evaluation; the search itself stays continuous.
    """

    name: str
    lower: np.ndarray
    upper: np.ndarray
    objective: Callable[[np.ndarray], float]
    constraints: tuple[Callable[[np.ndarray], float], ...] = ()
    integer_mask: np.ndarray | None = None

    def __post_init__(self):
        lo = np.asarray(self.lower, float)
        hi = np.asarray(self.upper, float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lower and upper must be 1-d vectors of equal length")
        if not np.all(lo < hi):
            raise ValueError("need lower < upper in every dimension")
        mask = np.zeros(lo.size, bool) if self.integer_mask is None else np.asarray(self.integer_mask, bool)
        if mask.shape != lo.shape:
            raise ValueError("integer_mask must match the dimension")
        for name, val in (("lower", lo), ("upper", hi), ("integer_mask", mask)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def clip(self, x) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def round_integers(self, x) -> np.ndarray:
        x = np.array(x, float)
        if self.integer_mask.any():
            x[..., self.integer_mask] = np.round(x[..., self.integer_mask])
        return x

    def constraint_values(self, x) -> np.ndarray:
        x = self.round_integers(x)
        return np.array([g(x) for g in self.constraints], float)

    def with_bounds(self, lower, upper) -> "Problem":
        """Same problem on the box ``[lower, upper]`` intersected with the current one."""
        lo = np.maximum(self.lower, lower)
        hi = np.minimum(self.upper, upper)
        return Problem(self.name, lo, hi, self.objective, self.constraints, self.integer_mask)


@dataclass(frozen=True)
class Candidate:
    position: np.ndarray
    objective_value: float
    violation: float

    @property
    def feasible(self) -> bool:
        return self.violation <= FEASIBILITY_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "x": [float(v) for v in self.position],
            "f": float(self.objective_value),
            "violation": float(self.violation),
            "feasible": self.feasible,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Candidate":
        return cls(np.asarray(d["x"], float), float(d["f"]), float(d["violation"]))


def _score(problem: Problem, x: np.ndarray) -> tuple[float, float]:
    f = float(problem.objective(x))
    v = 0.0
    for g in problem.constraints:
        gi = float(g(x))
        if math.isnan(gi):
            v = math.inf
        elif gi > 0:
            v += gi
    if math.isnan(f):
        f = math.inf
    return f, v


def evaluate(problem: Problem, x: Sequence[float]) -> Candidate:
    """Check the box, round integer coordinates, then score ``x``.

    Raises ``ValueError`` if ``x`` lies outside the box; callers clip first.
    The box check applies to the continuous point, so a sub-box narrower than
    one unit may still round an integer coordinate to just outside itself.
    """
    x = np.array(x, float)
    if x.shape != problem.lower.shape:
        raise ValueError(f"expected a vector of length {problem.dim}, got shape {x.shape}")
    if np.any(x < problem.lower - BOUND_SLACK) or np.any(x > problem.upper + BOUND_SLACK):
        raise ValueError(f"{problem.name}: point outside bounds: {x}")
    x = problem.round_integers(x)
    f, v = _score(problem, x)
    x.setflags(write=False)
    return Candidate(x, f, v)


class Evaluator:
    """Counts every evaluation made against one problem during one run."""

    def __init__(self, problem: Problem):
        self.problem = problem
        self.evaluations = 0

    def __call__(self, x, problem: Problem | None = None) -> Candidate:
        cand = evaluate(problem or self.problem, x)
        self.evaluations += 1
        return cand


def better_than(a: Candidate, b: Candidate) -> bool:
    """Feasibility rules for minimisation: is ``a`` strictly preferred to ``b``?"""
    if a.feasible != b.feasible:
        return a.feasible
    if a.feasible:
        return a.objective_value < b.objective_value
    return a.violation < b.violation


def best_of(candidates) -> Candidate:
    """First candidate not beaten by any later one (ties keep the earlier)."""
    it = iter(candidates)
    best = next(it)
    for c in it:
        if better_than(c, best):
            best = c
    return best


def sort_key(c: Candidate):
    """Key consistent with ``better_than``: sorting ascending puts the best first."""
    if c.feasible:
        return (0, c.objective_value)
    return (1, c.violation)
