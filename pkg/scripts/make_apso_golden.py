"""Regenerate tests/data/apso_sphere_golden.json (seeded 5-particle sphere swarm, 3 steps)."""

import json
from pathlib import Path

from eaglestrat.apso import ApsoConfig, apso_step, init_swarm, uniform_positions
from eaglestrat.benchmarks import sphere
from eaglestrat.problem import Evaluator
from eaglestrat.sampling import rng_stream

SEED = 2024


def golden() -> dict:
    problem = sphere(5)
    config = ApsoConfig(population=5, iterations=3)
    rng = rng_stream(SEED)
    ev = Evaluator(problem)
    swarm = init_swarm(ev, problem, uniform_positions(problem, config.population, rng))
    steps = []
    for _ in range(3):
        swarm = apso_step(swarm, config, rng, ev)
        steps.append(
            {
                "positions": swarm.positions.tolist(),
                "best_x": swarm.best_position.tolist(),
                "best_f": swarm.global_best.objective_value,
            }
        )
    return {"seed": SEED, "config": config.to_dict(), "evaluations": ev.evaluations, "steps": steps}


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "apso_sphere_golden.json"
    out.write_text(json.dumps(golden(), indent=2) + "\n")
    print(out)
