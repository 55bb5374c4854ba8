"""Accelerated particle swarm optimisation.

Every particle is pulled towards the swarm's best point and jittered by
Gaussian noise whose amplitude decays geometrically:

    x_i <- (1 - beta) x_i + beta g* + 0.1 * alpha0 * gamma**t * L * eps

``L`` is a per-dimension scale (box width by default), so the update is
anisotropic on problems whose variables have very different ranges.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .problem import Candidate, Evaluator, Problem, better_than
from .records import RunRecord
from .sampling import RngStream


@dataclass(frozen=True)
class ApsoConfig:
    population: int = 20
    beta: float = 0.5
    alpha0: float = 1.0
    gamma: float = 0.97
    iterations: int = 200
    scale: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.population < 1:
            raise ValueError("population must be >= 1")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not 0.5 <= self.alpha0 <= 1.0:
            raise ValueError(f"alpha0 must lie in [0.5, 1], got {self.alpha0}")
        if self.scale is not None and any(s < 0 for s in self.scale):
            raise ValueError("scale entries must be non-negative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scale"] = None if self.scale is None else list(self.scale)
        return d


def alpha_schedule(alpha0: float, gamma: float, t: int) -> float:
    return alpha0 * gamma**t


@dataclass
class Swarm:
    problem: Problem
    positions: np.ndarray
    particles: list[Candidate]
    global_best: Candidate
    best_position: np.ndarray
    iteration: int = 0
    history: list[tuple[int, Candidate]] = field(default_factory=list)


def init_swarm(evaluator: Evaluator, problem: Problem, positions: np.ndarray) -> Swarm:
    positions = problem.clip(np.asarray(positions, float))
    particles = [evaluator(x, problem) for x in positions]
    best_i = 0
    for i in range(1, len(particles)):
        if better_than(particles[i], particles[best_i]):
            best_i = i
    best = particles[best_i]
    swarm = Swarm(problem, positions, particles, best, positions[best_i].copy())
    swarm.history.append((evaluator.evaluations, best))
    return swarm


def apso_step(swarm: Swarm, config: ApsoConfig, rng: RngStream, evaluator: Evaluator) -> Swarm:
    """Move every particle once, re-evaluate, and update the best synchronously."""
    problem = swarm.problem
    scale = problem.width if config.scale is None else np.asarray(config.scale, float)
    alpha = 0.1 * alpha_schedule(config.alpha0, config.gamma, swarm.iteration) * scale
    eps = rng.standard_normal(swarm.positions.shape)
    moved = (1.0 - config.beta) * swarm.positions + config.beta * swarm.best_position + alpha * eps
    moved = problem.clip(moved)
    particles = [evaluator(x, problem) for x in moved]
    best, best_pos = swarm.global_best, swarm.best_position
    for x, c in zip(moved, particles):
        if better_than(c, best):
            best, best_pos = c, x.copy()
    history = swarm.history + [(evaluator.evaluations, best)]
    return Swarm(problem, moved, particles, best, best_pos, swarm.iteration + 1, history)


def uniform_positions(problem: Problem, n: int, rng: RngStream) -> np.ndarray:
    return problem.lower + rng.random((n, problem.dim)) * problem.width


def run_swarm(
    problem: Problem,
    config: ApsoConfig,
    rng: RngStream,
    evaluator: Evaluator,
    init=None,
) -> Swarm:
    if init is None or (isinstance(init, str) and init == "uniform-random"):
        positions = uniform_positions(problem, config.population, rng)
    else:
        positions = np.asarray(init, float)
        if positions.shape != (config.population, problem.dim):
            raise ValueError(f"init must have shape ({config.population}, {problem.dim}), got {positions.shape}")
    swarm = init_swarm(evaluator, problem, positions)
    for _ in range(config.iterations):
        swarm = apso_step(swarm, config, rng, evaluator)
    return swarm


def apso_optimize(
    problem: Problem,
    config: ApsoConfig,
    rng: RngStream,
    init="uniform-random",
    seed: int | None = None,
) -> RunRecord:
    """Plain APSO run; uses ``population * (iterations + 1)`` evaluations."""
    evaluator = Evaluator(problem)
    swarm = run_swarm(problem, config, rng, evaluator, init)
    return RunRecord(
        problem=problem.name,
        method="apso",
        seed=seed,
        best=swarm.global_best,
        evaluations=evaluator.evaluations,
        trace=[(e, c.objective_value) for e, c in swarm.history],
        stage_bests=[swarm.global_best],
        config={"apso": config.to_dict()},
    )
