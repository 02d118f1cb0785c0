from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_KEPT = 5


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    counterexamples: list[Any] = field(default_factory=list)
    failures: int = 0
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Any = None) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.counterexamples) < MAX_KEPT:
                self.counterexamples.append(witness)

    def add(self, checked: int, bad: list[Any], failures: int | None = None) -> None:
        """Bulk update from a vectorized check."""
        self.checked += checked
        self.failures += len(bad) if failures is None else failures
        room = MAX_KEPT - len(self.counterexamples)
        if room > 0:
            self.counterexamples.extend(bad[:room])

    def merge(self, other: SweepResult) -> SweepResult:
        self.add(other.checked, other.counterexamples, other.failures)
        for k, v in other.info.items():
            if isinstance(v, int) and isinstance(self.info.get(k), int):
                self.info[k] += v
            else:
                self.info.setdefault(k, v)
        return self

    def summary(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "first_counterexample": self.counterexamples[0] if self.counterexamples else None,
            **self.info,
        }
