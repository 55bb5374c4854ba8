"""Best-of-30 eagle runs on the engineering problems.

    python scripts/reproduce_benchmarks.py [--out results/] [--seeds 1..30] [--workers 4]
"""

import argparse
import json
from pathlib import Path

from eaglestrat import harness

PROBLEMS = ("pressure_vessel", "speed_reducer", "heat_exchanger", "heat_exchanger_classical", "pid")
CONFIG = Path(__file__).parent / "configs" / "benchmark.yaml"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--seeds", default="1..30")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--problems", nargs="*", default=list(PROBLEMS))
    args = ap.parse_args()

    base = harness.load_config(CONFIG)
    summary = {}
    for name in args.problems:
        spec = harness.ExperimentSpec.from_mapping(
            {**base, "problem": name, "seeds": args.seeds, "workers": args.workers, "output": f"{args.out}/{name}"}
        )
        agg = harness.run_campaign(spec).aggregate()
        summary[name] = agg
        print(f"{name:26s} best={agg['best_f']:.8g} median={agg['median_f']:.8g} "
              f"success={agg['success_rate']:.2f} evals/run={agg['evaluations_per_run_max']}")
    Path(args.out, "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
