"""Fitted growth exponents of E|S_t|^2 for Brownian, drifting and Lévy walks."""

from eaglestrat.analysis import WalkSpec, simulate_walk_variance
from eaglestrat.sampling import rng_stream

CASES = {
    "brownian": WalkSpec(),
    "brownian, drift 1": WalkSpec(drift=(1.0,), trials=2000),
    "levy 1.2": WalkSpec(kind="levy", levy_index=1.2),
    "levy 1.5": WalkSpec(kind="levy", levy_index=1.5),
    "levy 1.8": WalkSpec(kind="levy", levy_index=1.8),
    "levy 2.0": WalkSpec(kind="levy", levy_index=2.0),
}

if __name__ == "__main__":
    for label, spec in CASES.items():
        s = simulate_walk_variance(spec, rng_stream(7))
        target = "" if spec.levy_index is None else f"  (3-beta = {3 - spec.levy_index:.2f}, 2/beta = {2 / spec.levy_index:.2f})"
        print(f"{label:18s} exponent {s.fitted_exponent:.3f}  r2 {s.fit_r2:.4f}{target}")
