"""Deterministic verification reports.

A report carries the task name, its parameters, one line per executed check,
an overall verdict, and the first counterexample found (if any).  Everything
except the timing block is byte-stable for fixed parameters, so identical
runs serialize identically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA = "magforms-report/1"


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    task: str
    params: dict
    checks: list[CheckResult] = field(default_factory=list)
    counterexample: dict | None = None
    wall_time_s: float = 0.0
    timestamp: str = ""

    @property
    def verdict(self) -> str:
        return "PASS" if all(c.ok for c in self.checks) else "FAIL"

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))
        if not ok and self.counterexample is None:
            self.counterexample = {"check": name, "detail": detail}

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "task": self.task,
            "params": self.params,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "timing": {
                "wall_time_s": round(self.wall_time_s, 3),
                "timestamp": self.timestamp,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = [f"== {self.task} =="]
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            suffix = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status}] {c.name}{suffix}")
        lines.append(f"verdict: {self.verdict}   ({self.wall_time_s:.2f} s)")
        return "\n".join(lines)


class ReportTimer:
    """Context manager filling in wall time and timestamp."""

    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self._t0 = time.time()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time_s = time.time() - self._t0
        self.report.timestamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        return False
