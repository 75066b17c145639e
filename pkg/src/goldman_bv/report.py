"""Result records shared by the verification harnesses."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class CheckResult:
    """Outcome of one identity over all samples; keeps the first failure."""

    name: str
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = None

    def record(self, ok: bool, payload) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = payload()
