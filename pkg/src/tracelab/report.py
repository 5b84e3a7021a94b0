"""Suite reports and their text/JSON renderings.

JSON schema (``schema_version`` 1)::

    {
      "schema_version": 1,
      "suite": str, "ring": str, "seed": int,
      "params": {"max_dim": int, "cap": int, "seed": int, "trials": int},
      "cases": [{"index": int, "name": str, "inputs": str,
                 "verdict": "pass" | "fail" | "inconclusive",
                 "details": {...}, "counterexample": {...} | null}],
      "summary": {"pass": int, "fail": int, "inconclusive": int, "total": int},
      "notes": [str],
      "wall_time": float
    }

Counterexamples hold subspace bases as row lists and maps as nested lists,
scalars as integers or ``"a/b"`` strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

SCHEMA_VERSION = 1
VERDICTS = ("pass", "fail", "inconclusive")


def jsonable(obj: Any) -> Any:
    """Convert arrays, Fractions and tuples into plain JSON values."""
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()] if obj.ndim else jsonable(obj.item())
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


@dataclass
class Case:
    name: str
    inputs: str
    verdict: str
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None
    index: int = 0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        self.details = jsonable(self.details)
        if self.counterexample is not None:
            self.counterexample = jsonable(self.counterexample)


@dataclass
class Report:
    suite: str
    ring: str
    params: dict
    cases: list[Case] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    schema_version: int = SCHEMA_VERSION

    @property
    def seed(self) -> int:
        return int(self.params.get("seed", 0))

    @property
    def summary(self) -> dict[str, int]:
        counts = {v: 0 for v in VERDICTS}
        for c in self.cases:
            counts[c.verdict] += 1
        counts["total"] = len(self.cases)
        return counts

    def add(self, case: Case) -> Case:
        case.index = len(self.cases)
        self.cases.append(case)
        return case

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["fail"]:
            return 1
        if s["inconclusive"]:
            return 3
        return 0

    def failures(self) -> list[Case]:
        return [c for c in self.cases if c.verdict == "fail"]

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "ring": self.ring,
            "seed": self.seed,
            "params": jsonable(self.params),
            "cases": [
                {
                    "index": c.index,
                    "name": c.name,
                    "inputs": c.inputs,
                    "verdict": c.verdict,
                    "details": c.details,
                    "counterexample": c.counterexample,
                }
                for c in self.cases
            ],
            "summary": self.summary,
            "notes": list(self.notes),
            "wall_time": round(self.wall_time, 6),
        }


def report_from_dict(d: dict) -> Report:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    r = Report(d["suite"], d["ring"], dict(d["params"]), notes=list(d.get("notes", [])), wall_time=d.get("wall_time", 0.0))
    for c in d["cases"]:
        r.add(Case(c["name"], c["inputs"], c["verdict"], c.get("details") or {}, c.get("counterexample")))
    if r.summary != d["summary"]:
        raise ValueError("summary counts do not match the cases")
    return r


def render_report(r: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"suite {r.suite} on {r.ring}  params {json.dumps(jsonable(r.params), sort_keys=True)}"]
    width = max((len(c.name) for c in r.cases), default=0)
    for c in r.cases:
        extra = ""
        if c.verdict != "pass" and "reason" in c.details:
            extra = f"  ({c.details['reason']})"
        lines.append(f"[{c.verdict.upper():>12}] {c.index:4d} {c.name:<{width}}  {c.inputs}{extra}")
    for n in r.notes:
        lines.append(f"note: {n}")
    s = r.summary
    lines.append(
        f"summary: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive of {s['total']}"
        f"  ({r.wall_time:.2f}s)"
    )
    return "\n".join(lines)


def counterexample_submodule(sub, **extra) -> dict:
    """Enough data to rebuild a submodule check with library calls alone."""
    out = {
        "ambient_action": [a for a in sub.ambient.action],
        "subspace_basis": sub.space.basis,
    }
    out.update(extra)
    return out
