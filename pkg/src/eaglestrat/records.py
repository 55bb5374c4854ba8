"""Run records and their JSON / CSV forms."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .problem import Candidate


@dataclass
class RunRecord:
    problem: str
    method: str
    seed: int | None
    best: Candidate
    evaluations: int
    trace: list[tuple[int, float]]
    stage_bests: list[Candidate] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "method": self.method,
            "seed": self.seed,
            "config": self.config,
            "best": self.best.to_dict(),
            "best_x": self.best.to_dict()["x"],
            "best_f": float(self.best.objective_value),
            "violation": float(self.best.violation),
            "feasible": self.best.feasible,
            "evaluations": int(self.evaluations),
            "stage_bests": [c.to_dict() for c in self.stage_bests],
            "trace": [[int(e), float(f)] for e, f in self.trace],
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        return cls(
            problem=d["problem"],
            method=d["method"],
            seed=d["seed"],
            best=Candidate.from_dict(d["best"]),
            evaluations=int(d["evaluations"]),
            trace=[(int(e), float(f)) for e, f in d["trace"]],
            stage_bests=[Candidate.from_dict(c) for c in d.get("stage_bests", [])],
            config=d.get("config", {}),
            extra=d.get("extra", {}),
        )

    def write_trace_csv(self, path) -> None:
        """Best objective after each iteration, as (iteration, evaluations, best_f)."""
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iteration", "evaluations", "best_f"])
            for i, (e, f) in enumerate(self.trace):
                w.writerow([i, e, repr(float(f))])
