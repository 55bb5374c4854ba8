"""Command line: ``eaglestrat {list,run,estimate,walklab,compare,verify}``.

Exit status is 0 on success, 2 on usage errors and 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, harness
from .benchmarks import catalog
from .problem import FEASIBILITY_TOLERANCE, evaluate

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def cmd_list(args) -> int:
    for name, entry in catalog().items():
        p = entry.problem
        print(f"{name:26s} dim={p.dim:<2d} constraints={len(p.constraints):<2d} best_known={entry.best_known.objective_value:.7g}")
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = harness.load_config(args.config) if args.config else {}
    for key in ("problem", "method", "output", "workers", "gap"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if args.seeds is not None:
        cfg["seeds"] = args.seeds
    apso_over = {k: getattr(args, k) for k in ("population", "iterations") if getattr(args, k) is not None}
    if apso_over:
        cfg["apso"] = {**(cfg.get("apso") or {}), **apso_over}
    eagle_over = {}
    if args.stages is not None:
        eagle_over["stages"] = args.stages
    if args.levy_index is not None:
        eagle_over["levy"] = {**((cfg.get("eagle") or {}).get("levy") or {"scale": 0.01}), "index": args.levy_index}
    if eagle_over:
        cfg["eagle"] = {**(cfg.get("eagle") or {}), **eagle_over}
    if "problem" not in cfg:
        raise UsageError("--problem is required (on the command line or in the config file)")
    try:
        spec = harness.ExperimentSpec.from_mapping(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = harness.run_campaign(spec)
    agg = report.aggregate()
    for rec in report.records:
        line = f"seed={rec.seed} f={rec.best.objective_value:.10g} violation={rec.best.violation:.3g} evaluations={rec.evaluations}"
        if "metrics" in rec.extra:
            m = rec.extra["metrics"]
            line += f" rise={m['rise_time']:.4g}s settling={m['settling_time']:.4g}s overshoot={m['overshoot']:.4g}%"
        print(line)
    print(json.dumps(agg, sort_keys=True))
    return EXIT_OK


def cmd_estimate(args) -> int:
    try:
        rows = analysis.reduction_table(args.L, args.delta, args.d, args.beta, args.coarse_delta, args.shrink)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for label, value in rows:
        print(f"{label:16s} {_fmt(value)}")
    return EXIT_OK


def cmd_walklab(args) -> int:
    drift = None
    if args.drift is not None:
        drift = (args.drift,) * args.dim
    try:
        spec = analysis.WalkSpec(
            kind=args.kind,
            dim=args.dim,
            steps=args.steps,
            trials=args.trials,
            step_scale=args.step_scale,
            drift=drift,
            levy_index=args.beta,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    from .sampling import rng_stream

    stats = analysis.simulate_walk_variance(spec, rng_stream(args.seed))
    if args.output:
        stats.to_csv(args.output)
    print(f"fitted_exponent {stats.fitted_exponent:.4f}")
    print(f"fit_r2 {stats.fit_r2:.4f}")
    return EXIT_OK


def cmd_compare(args) -> int:
    a = harness.load_report(args.report_a)
    b = harness.load_report(args.report_b)
    results = harness.compare_reports(a, b, args.pooled)
    for key, res in results.items():
        print(f"{key:12s} t={res.t_statistic:.6g} dof={res.degrees_of_freedom:.6g} p={res.p_value:.6g}")
    if args.json:
        Path(args.json).write_text(
            json.dumps({k: r.to_dict() for k, r in results.items()}, indent=2, sort_keys=True) + "\n"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    print(f"{'problem':26s} {'point':9s} {'f':>16s} {'reported':>14s} {'violation':>11s} feasible")
    for name, entry in catalog().items():
        best = evaluate(entry.problem, entry.best_known.position)
        good = best.feasible and abs(best.objective_value - entry.best_known.objective_value) <= 1e-4 * max(
            1.0, abs(entry.best_known.objective_value)
        )
        ok &= good
        print(f"{name:26s} {'best':9s} {best.objective_value:16.8f} {'':>14s} {best.violation:11.3g} {best.feasible}")
        if entry.reported_x is not None:
            rep = evaluate(entry.problem, entry.reported_x)
            rf = "" if entry.reported_f is None else f"{entry.reported_f:.8g}"
            print(f"{name:26s} {'reported':9s} {rep.objective_value:16.8f} {rf:>14s} {rep.violation:11.3g} {rep.feasible}")
    print(f"feasibility tolerance {FEASIBILITY_TOLERANCE:g}")
    return EXIT_OK if ok else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eaglestrat", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list catalogued problems").set_defaults(func=cmd_list)
    sub.add_parser("verify", help="re-evaluate catalogued reference points").set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="run a seeded campaign")
    p.add_argument("--config", help="YAML experiment file; flags override its values")
    p.add_argument("--problem")
    p.add_argument("--method", choices=harness.METHODS)
    p.add_argument("--seeds", help="e.g. 1..30 or 1,2,7 (default 1..30)")
    p.add_argument("--output", help="campaign directory")
    p.add_argument("--workers", type=int)
    p.add_argument("--gap", type=float, help="relative success gap against the reference (default 0.005)")
    p.add_argument("--population", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--stages", type=int)
    p.add_argument("--levy-index", type=float)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("estimate", help="iteration-count estimates")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--coarse-delta", type=float, help="stage-one tolerance for the two-stage estimate")
    p.add_argument("--shrink", type=float, default=1000.0, help="L1 / L2 for the two-stage estimate")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("walklab", help="simulate walk variance growth")
    p.add_argument("--kind", choices=["brownian", "levy"], default="brownian")
    p.add_argument("--beta", type=float)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--step-scale", type=float, default=1.0)
    p.add_argument("--drift", type=float, help="drift speed per dimension")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--output", help="CSV path for (t, variance, trials)")
    p.set_defaults(func=cmd_walklab)

    p = sub.add_parser("compare", help="t-test two campaign reports")
    p.add_argument("report_a")
    p.add_argument("report_b")
    p.add_argument("--pooled", action="store_true", help="equal-variance test instead of Welch")
    p.add_argument("--json", help="write results here")
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, harness.ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
