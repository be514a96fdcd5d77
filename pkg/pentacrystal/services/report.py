from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class SuiteReport:
    """Named checks of one verification suite; a failed check never raises, it is listed here."""

    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, name: str, passed: bool, detail: Any = None) -> bool:
        self.results[name] = {"ok": bool(passed)} if detail is None else {"ok": bool(passed), "detail": detail}
        if not passed:
            self.failures.append(name)
        return passed

    def note(self, name: str, value: Any) -> None:
        self.results[name] = value

    def merge(self, other: SuiteReport, prefix: str | None = None) -> None:
        prefix = prefix or other.suite
        for name, value in other.results.items():
            self.results[f"{prefix}.{name}"] = value
        self.failures.extend(f"{prefix}.{name}" for name in other.failures)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "params": self.params, "results": self.results, "failures": self.failures}
