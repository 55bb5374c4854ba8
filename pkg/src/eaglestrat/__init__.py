"""Eagle strategy (Lévy-flight exploration + accelerated PSO) for constrained design problems."""

from .apso import ApsoConfig, alpha_schedule, apso_optimize
from .eagle import BENCHMARK_ES_CONFIG, EsConfig, explore, run_eagle
from .problem import Candidate, Evaluator, Problem, better_than, evaluate
from .records import RunRecord
from .sampling import LevyParams, rng_stream

__all__ = [
    "ApsoConfig",
    "BENCHMARK_ES_CONFIG",
    "Candidate",
    "EsConfig",
    "Evaluator",
    "LevyParams",
    "Problem",
    "RunRecord",
    "alpha_schedule",
    "apso_optimize",
    "better_than",
    "evaluate",
    "explore",
    "rng_stream",
    "run_eagle",
]
