"""Check recording and report assembly shared by all suites.

A CheckSet aggregates many observations under named checks: the same name
may be touched repeatedly (once per random instance) and the row stays a
pass until the first failure, whose counterexample is kept.  Reports are
deterministic for fixed inputs except for the wall-time field.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .errors import (
    DimensionMismatch,
    NotABundleMorphism,
    PreconditionFailure,
    SemiringViolation,
)

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class CheckResult:
    name: str
    status: str
    counterexample: Optional[str] = None


@dataclass
class Report:
    suite: str
    params: Dict[str, object]
    checks: List[CheckResult]
    passed: int
    failed: int
    duration_ms: float

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "counterexample": c.counterexample,
                }
                for c in self.checks
            ],
            "passed": self.passed,
            "failed": self.failed,
            "duration_ms": self.duration_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.passed} passed, {self.failed} failed"]
        for c in self.checks:
            if c.status == PASS:
                lines.append(f"  [pass] {c.name}")
            else:
                lines.append(f"  [{c.status.upper()}] {c.name}: {c.counterexample}")
        return "\n".join(lines)


class CheckSet:
    """Accumulates per-check outcomes; first failure per name is kept."""

    def __init__(self):
        self._rows: Dict[str, CheckResult] = {}
        self._start = time.perf_counter()

    def _touch(self, name: str) -> CheckResult:
        row = self._rows.get(name)
        if row is None:
            row = CheckResult(name, PASS)
            self._rows[name] = row
        return row

    def _fail(self, name: str, status: str, detail: str):
        row = self._touch(name)
        if row.status == PASS:
            row.status = status
            row.counterexample = detail

    def condition(self, name: str, ok: bool, detail: str = "") -> bool:
        if ok:
            self._touch(name)
        else:
            self._fail(name, FAIL, detail or "condition violated")
        return ok

    def equality(
        self,
        name: str,
        lhs,
        rhs,
        detail: str = "",
        render: Callable[[object], str] = str,
    ) -> bool:
        if lhs == rhs:
            self._touch(name)
            return True
        prefix = f"{detail}; " if detail else ""
        self._fail(name, FAIL, f"{prefix}lhs = {render(lhs)}; rhs = {render(rhs)}")
        return False

    def numeric(self, name: str, value: float, tol: float, detail: str = "") -> bool:
        if value <= tol:
            self._touch(name)
            return True
        prefix = f"{detail}; " if detail else ""
        self._fail(name, FAIL, f"{prefix}residual = {value:.3e} exceeds {tol:.1e}")
        return False

    def error(self, name: str, message: str):
        self._fail(name, ERROR, message)

    def absorb(self, report: "Report", prefix: str = ""):
        """Fold another report's rows into this set under a prefix."""
        for c in report.checks:
            name = f"{prefix}{c.name}"
            if c.status == PASS:
                self._touch(name)
            else:
                self._fail(name, c.status, c.counterexample or "")

    @contextmanager
    def guard(self, name: str):
        """Record expected verification exceptions as an error row."""
        try:
            yield
        except (
            PreconditionFailure,
            DimensionMismatch,
            SemiringViolation,
            NotABundleMorphism,
        ) as exc:
            self.error(name, f"{type(exc).__name__}: {exc}")

    def report(self, suite: str, params: Dict[str, object]) -> Report:
        checks = [self._rows[name] for name in sorted(self._rows)]
        passed = sum(1 for c in checks if c.status == PASS)
        duration = (time.perf_counter() - self._start) * 1000.0
        return Report(
            suite=suite,
            params=dict(params),
            checks=checks,
            passed=passed,
            failed=len(checks) - passed,
            duration_ms=round(duration, 3),
        )
