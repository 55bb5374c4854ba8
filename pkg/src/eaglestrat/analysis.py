"""Step-size and iteration-count estimates for random-walk search, and a
Monte-Carlo check of how walk variance grows with time."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .sampling import LevyParams, RngStream, rng_stream, sample_gaussian_step, sample_levy_step

LEVY_TRIM_FRACTION = 1e-3


def brownian_variance(t: float, d: int, diffusion: float, drift_speed: float = 0.0) -> float:
    """``|v0|² t² + 2 d D t``."""
    if t < 0 or d < 1 or diffusion < 0 or drift_speed < 0:
        raise ValueError("brownian_variance: arguments out of domain")
    return drift_speed**2 * t**2 + 2.0 * d * diffusion * t


def diffusion_coefficient(step_scale: float, tau: float = 1.0) -> float:
    return step_scale**2 / (2.0 * tau)


def estimate_step_size(L: float, t: int, d: int, r_fraction: float = 0.1, tau: float = 1.0) -> float:
    """Typical step for a walker to cover ``r = r_fraction * L`` in ``t`` steps from ``r² = 2 d D t``.

    ``r`` is read as a root-mean-square displacement.
    """
    if L <= 0 or t < 1 or d < 1 or not 0 < r_fraction <= 1 or tau <= 0:
        raise ValueError("estimate_step_size: arguments out of domain")
    return r_fraction * L * math.sqrt(tau) / math.sqrt(t * d)


def estimate_iterations_gaussian(L: float, delta: float, d: int) -> float:
    """Upper-bound iteration count ``L² / (δ² d)`` for a Gaussian walk to reach accuracy δ."""
    if L <= 0 or delta <= 0 or d < 1:
        raise ValueError("estimate_iterations_gaussian: arguments out of domain")
    if delta >= L:
        raise ValueError(f"tolerance delta={delta} must be smaller than the scale L={L}")
    return L**2 / (delta**2 * d)


def estimate_iterations_levy(L: float, delta: float, d: int, beta: float) -> float:
    """Lévy-flight counterpart ``(L² / (δ² d)) ** (1 / (3 - β))``."""
    if not 1.0 <= beta <= 2.0:
        raise ValueError(f"beta must lie in [1, 2], got {beta}")
    return estimate_iterations_gaussian(L, delta, d) ** (1.0 / (3.0 - beta))


@dataclass(frozen=True)
class TwoStageEstimate:
    coarse: float
    fine: float

    @property
    def total(self) -> float:
        return self.coarse + self.fine


def estimate_two_stage(
    L: float,
    coarse_delta: float,
    fine_delta: float,
    d: int,
    shrink: float = 1000.0,
    beta: float | None = None,
) -> TwoStageEstimate:
    """Iterations for a coarse stage over ``L`` then a fine stage over ``L / shrink``.

    With ``beta`` set, each stage uses the Lévy estimate instead of the Gaussian one.
    """
    local = L / shrink

    def stage(scale, delta):
        if beta is None:
            return estimate_iterations_gaussian(scale, delta, d)
        return estimate_iterations_levy(scale, delta, d, beta)

    return TwoStageEstimate(stage(L, coarse_delta), stage(local, fine_delta))


def reduction_table(
    L: float,
    delta: float,
    d: int,
    beta: float | None = None,
    coarse_delta: float | None = None,
    shrink: float = 1000.0,
) -> list[tuple[str, float]]:
    """Rows of (label, iterations) from plain Gaussian down to ES with Lévy flights."""
    rows = [("gaussian", estimate_iterations_gaussian(L, delta, d))]
    if beta is not None:
        rows.append(("levy", estimate_iterations_levy(L, delta, d, beta)))
    if coarse_delta is not None:
        two = estimate_two_stage(L, coarse_delta, delta, d, shrink)
        rows += [("es_stage1", two.coarse), ("es_stage2", two.fine), ("es_total", two.total)]
        if beta is not None:
            lev = estimate_two_stage(L, coarse_delta, delta, d, shrink, beta)
            rows += [("es_levy_stage1", lev.coarse), ("es_levy_stage2", lev.fine), ("es_levy_total", lev.total)]
    return rows


class WalkKind(str, enum.Enum):
    BROWNIAN = "brownian"
    LEVY = "levy"


@dataclass(frozen=True)
class WalkSpec:
    kind: WalkKind = WalkKind.BROWNIAN
    dim: int = 1
    steps: int = 1000
    trials: int = 10_000
    step_scale: float = 1.0
    jump_interval: float = 1.0
    drift: tuple[float, ...] | None = None
    levy_index: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", WalkKind(self.kind))
        if self.dim < 1 or self.trials < 1 or self.steps < 2:
            raise ValueError("WalkSpec needs dim >= 1, trials >= 1, steps >= 2")
        if self.step_scale < 0 or self.jump_interval <= 0:
            raise ValueError("step_scale must be >= 0 and jump_interval > 0")
        if self.drift is not None and len(self.drift) != self.dim:
            raise ValueError("drift must have length dim")
        if self.kind is WalkKind.LEVY:
            if self.levy_index is None or not 1.0 <= self.levy_index <= 2.0:
                raise ValueError("Lévy walks need levy_index in [1, 2]")

    @property
    def drift_vector(self) -> np.ndarray:
        return np.zeros(self.dim) if self.drift is None else np.asarray(self.drift, float)


@dataclass
class WalkStatistics:
    times: np.ndarray
    empirical_variance: np.ndarray
    fitted_exponent: float
    fit_r2: float
    trials: int
    standard_error: np.ndarray = field(repr=False, default=None)

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "variance", "trials"])
            for t, v in zip(self.times, self.empirical_variance):
                w.writerow([repr(float(t)), repr(float(v)), self.trials])


def fit_power_law(times, values) -> tuple[float, float]:
    """Least-squares slope of log(values) on log(times) and its R²."""
    lx, ly = np.log(np.asarray(times, float)), np.log(np.asarray(values, float))
    slope, icept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + icept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), min(1.0, max(0.0, r2))


def _trial_sq_norms(spec: WalkSpec, rng: RngStream) -> np.ndarray:
    if spec.kind is WalkKind.LEVY:
        steps = sample_levy_step(spec.dim, LevyParams(spec.levy_index), rng, size=spec.steps)
    else:
        steps = sample_gaussian_step(spec.dim, 1.0, rng, size=spec.steps)
    k = np.arange(1, spec.steps + 1)[:, None]
    pos = spec.step_scale * np.cumsum(steps, axis=0) + k * spec.jump_interval * spec.drift_vector
    return np.sum(pos**2, axis=1)


def simulate_walk_variance(spec: WalkSpec, rng: RngStream) -> WalkStatistics:
    """Mean squared displacement ``E|S_t|²`` over independent walks, with a log-log fit.

    Each trial draws from its own stream keyed by (base seed, trial index),
    the base seed being taken from ``rng``.  For Lévy walks the largest 0.1 %
    of trial norms at each time are discarded before averaging.  The exponent
    is fitted over the second half of the time range.
    """
    base = int(rng.integers(0, 2**63))
    sq = np.empty((spec.trials, spec.steps))
    for i in range(spec.trials):
        sq[i] = _trial_sq_norms(spec, rng_stream(base, i))
    if spec.kind is WalkKind.LEVY:
        keep = spec.trials - int(math.floor(LEVY_TRIM_FRACTION * spec.trials))
        sq = np.sort(sq, axis=0)[:keep]
    msd = sq.mean(axis=0)
    se = sq.std(axis=0, ddof=1) / math.sqrt(sq.shape[0]) if sq.shape[0] > 1 else np.zeros(spec.steps)
    times = np.arange(1, spec.steps + 1) * spec.jump_interval
    half = spec.steps // 2
    slope, r2 = fit_power_law(times[half:], msd[half:])
    return WalkStatistics(times, msd, slope, r2, spec.trials, se)
