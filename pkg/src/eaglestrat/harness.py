"""Seeded experiment campaigns and their on-disk reports.

A campaign directory holds ``runs/<seed>.json``, ``traces/<seed>.csv`` and
``report.json``.  Run files contain no timestamps, so rerunning a campaign
reproduces them byte for byte; the only timestamp lives under
``report.json["created_utc"]``.
"""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import yaml

from .apso import ApsoConfig, apso_optimize
from .benchmarks import catalog, get_problem
from .controlsim import THIRD_ORDER_PLANT, PidParams, closed_loop_step, response_metrics
from .eagle import EsConfig, run_eagle
from .records import RunRecord
from .sampling import LevyParams, rng_stream
from .stats import TTestResult, two_sample_t_test

METHODS = ("apso", "eagle")
DEFAULT_SEEDS = tuple(range(1, 31))
DEFAULT_GAP = 0.005


class ConfigError(ValueError):
    """Bad experiment configuration (unknown problem, malformed file, ...)."""


def apso_config_from(d: dict | None) -> ApsoConfig:
    d = dict(d or {})
    if d.get("scale") is not None:
        d["scale"] = tuple(float(s) for s in d["scale"])
    try:
        return ApsoConfig(**d)
    except TypeError as exc:
        raise ConfigError(f"bad apso config: {exc}") from None


def es_config_from(d: dict | None, apso: ApsoConfig) -> EsConfig:
    d = dict(d or {})
    levy = d.pop("levy", None) or {}
    try:
        return EsConfig(levy=LevyParams(**levy) if levy else EsConfig().levy, apso=apso, **d)
    except TypeError as exc:
        raise ConfigError(f"bad eagle config: {exc}") from None


@dataclass(frozen=True)
class ExperimentSpec:
    problem: str
    method: str = "eagle"
    apso: ApsoConfig = field(default_factory=ApsoConfig)
    eagle: EsConfig = field(default_factory=EsConfig)
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    output: Path | None = None
    gap: float = DEFAULT_GAP
    workers: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.problem not in catalog():
            raise ConfigError(f"unknown problem {self.problem!r}; choose from {sorted(catalog())}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds must be distinct")
        # eagle uses its own nested apso config
        if self.method == "eagle" and self.eagle.apso != self.apso:
            object.__setattr__(self, "eagle", EsConfig(**{**self.eagle.__dict__, "apso": self.apso}))

    @classmethod
    def from_mapping(cls, d: dict) -> "ExperimentSpec":
        d = dict(d)
        apso = apso_config_from(d.pop("apso", None))
        eagle = es_config_from(d.pop("eagle", None), apso)
        seeds = d.pop("seeds", None)
        if seeds is not None:
            seeds = parse_seeds(seeds) if isinstance(seeds, str) else tuple(int(s) for s in seeds)
        out = d.pop("output", None)
        try:
            return cls(
                apso=apso,
                eagle=eagle,
                seeds=seeds or DEFAULT_SEEDS,
                output=Path(out) if out else None,
                **d,
            )
        except TypeError as exc:
            raise ConfigError(f"bad experiment config: {exc}") from None

    def config_dict(self) -> dict:
        return {"apso": self.apso.to_dict()} if self.method == "apso" else {"eagle": self.eagle.to_dict()}


def load_config(path) -> dict:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping at top level")
    return data


def parse_seeds(text: str) -> tuple[int, ...]:
    """``"1..30"``, ``"1,5,9"`` or a mix such as ``"1..3,10"``."""
    seeds: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            else:
                seeds.append(int(part))
        except ValueError:
            raise ConfigError(f"bad seed list {text!r}") from None
    return tuple(seeds)


def run_one(problem_name: str, method: str, config: dict, seed: int) -> RunRecord:
    problem = get_problem(problem_name)
    apso = apso_config_from(config.get("apso") or (config.get("eagle") or {}).get("apso"))
    rng = rng_stream(seed)
    if method == "apso":
        rec = apso_optimize(problem, apso, rng, seed=seed)
    else:
        rec = run_eagle(problem, es_config_from(_without(config["eagle"], "apso"), apso), rng, seed=seed)
    if problem_name == "pid":
        kp, ti, td = rec.best.position
        rec.extra["metrics"] = asdict(response_metrics(closed_loop_step(THIRD_ORDER_PLANT, PidParams(kp, ti, td))))
    return rec


def _without(d: dict, key: str) -> dict:
    return {k: v for k, v in d.items() if k != key}


def _run_args(args):
    return run_one(*args)


@dataclass
class CampaignReport:
    problem: str
    method: str
    records: list[RunRecord]
    reference_f: float | None
    gap: float = DEFAULT_GAP

    def feasible_objectives(self) -> list[float]:
        return [r.best.objective_value for r in self.records if r.best.feasible]

    def successes(self) -> list[bool]:
        return [success(r, self.reference_f, self.gap) for r in self.records]

    def aggregate(self) -> dict:
        fs = self.feasible_objectives()
        evals = [r.evaluations for r in self.records]
        succ = self.successes()
        return {
            "runs": len(self.records),
            "feasible_runs": len(fs),
            "best_f": min(fs) if fs else None,
            "median_f": statistics.median(fs) if fs else None,
            "worst_f": max(fs) if fs else None,
            "evaluations_total": int(sum(evals)),
            "evaluations_per_run_max": int(max(evals)),
            "reference_f": self.reference_f,
            "gap": self.gap,
            "success_rate": sum(succ) / len(succ),
        }

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "method": self.method,
            "aggregate": self.aggregate(),
            "runs": [
                {
                    "seed": r.seed,
                    "best_f": float(r.best.objective_value),
                    "violation": float(r.best.violation),
                    "feasible": r.best.feasible,
                    "evaluations": int(r.evaluations),
                    "best_x": [float(v) for v in r.best.position],
                    **({"metrics": r.extra["metrics"]} if "metrics" in r.extra else {}),
                }
                for r in self.records
            ],
        }


def success(rec: RunRecord, reference_f: float | None, gap: float) -> bool:
    """Feasible and no worse than ``reference_f`` by more than ``gap`` (relative)."""
    if not rec.best.feasible:
        return False
    if reference_f is None:
        return True
    denom = abs(reference_f) if reference_f != 0 else 1.0
    return (rec.best.objective_value - reference_f) / denom <= gap


def reference_value(problem: str) -> float | None:
    entry = catalog()[problem]
    return entry.reported_f if entry.reported_f is not None else float(entry.best_known.objective_value)


def run_campaign(spec: ExperimentSpec) -> CampaignReport:
    """Run every seed, write per-run JSON/CSV and ``report.json`` if an output dir is set."""
    config = spec.config_dict()
    jobs = [(spec.problem, spec.method, config, s) for s in spec.seeds]
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            records = list(pool.map(_run_args, jobs))
    else:
        records = [run_one(*job) for job in jobs]
    report = CampaignReport(spec.problem, spec.method, records, reference_value(spec.problem), spec.gap)
    if spec.output is not None:
        write_campaign(report, Path(spec.output))
    return report


def write_campaign(report: CampaignReport, out: Path) -> None:
    (out / "runs").mkdir(parents=True, exist_ok=True)
    (out / "traces").mkdir(parents=True, exist_ok=True)
    for rec in report.records:
        (out / "runs" / f"{rec.seed}.json").write_text(rec.to_json() + "\n", encoding="utf-8")
        rec.write_trace_csv(out / "traces" / f"{rec.seed}.csv")
    body = report.to_dict()
    body["created_utc"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    (out / "report.json").write_text(json.dumps(body, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_report(path) -> dict:
    """Read ``report.json`` (or the campaign directory containing it)."""
    p = Path(path)
    if p.is_dir():
        p = p / "report.json"
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
        runs = data["runs"]
        for r in runs:
            int(r["evaluations"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read report {path}: {exc}") from None
    return data


def compare_reports(a: dict, b: dict, equal_variance: bool = False) -> dict[str, TTestResult]:
    ra, rb = a["runs"], b["runs"]
    if len(ra) < 2 or len(rb) < 2:
        raise ConfigError("each report needs at least two runs to compare")
    out = {
        "evaluations": two_sample_t_test([r["evaluations"] for r in ra], [r["evaluations"] for r in rb], equal_variance)
    }
    fa, fb = [r.get("best_f") for r in ra], [r.get("best_f") for r in rb]
    if None not in fa and None not in fb:
        out["best_f"] = two_sample_t_test(fa, fb, equal_variance)
    return out


def reference_report(evaluations: int, runs: int = 30, best_f: float | None = None, problem: str = "reference") -> dict:
    """Stand-in report for a method known only by its evaluation budget."""
    return {
        "problem": problem,
        "method": "reference",
        "runs": [{"seed": i, "evaluations": int(evaluations), "best_f": best_f} for i in range(runs)],
    }
