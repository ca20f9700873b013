"""Pass/fail reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        s = f"CHECK {self.id} {'PASS' if self.passed else 'FAIL'}"
        return f"{s} {self.witness}" if self.witness and not self.passed else s


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, passed: bool, witness: str = "") -> None:
        self.checks.append(Check(id, bool(passed), witness))

    def fail(self, id: str, witness: str) -> None:
        self.add(id, False, witness)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def failed_ids(self) -> set[str]:
        return {c.id for c in self.failures()}

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def text(self) -> str:
        return "\n".join(self.lines())


class Tally:
    """Collects failures per check id so a report has one line per id."""

    def __init__(self, ids: list[str]):
        self.order = list(ids)
        self.first: dict[str, str] = {}

    def fail(self, id: str, witness: str) -> None:
        if id not in self.order:
            self.order.append(id)
        self.first.setdefault(id, witness)

    def report(self) -> Report:
        r = Report()
        for id in self.order:
            r.add(id, id not in self.first, self.first.get(id, ""))
        return r
