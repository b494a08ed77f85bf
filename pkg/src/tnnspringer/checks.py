"""Named pass/fail results shared by the invariant suites."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import TNNError


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def run_check(name: str, fn: Callable[[], str | None]) -> CheckResult:
    """Run ``fn``; a raised library error or failed assertion marks the check failed."""
    try:
        return CheckResult(name, True, fn() or "")
    except (TNNError, AssertionError, KeyError) as exc:
        return CheckResult(name, False, str(exc) or type(exc).__name__)
