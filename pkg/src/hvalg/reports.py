"""Pass/fail reports produced by the window checks."""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_LISTED = 50


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    n_failures: int = 0
    failures: list = field(default_factory=list)

    def fail(self, message):
        self.n_failures += 1
        if len(self.failures) < MAX_LISTED:
            self.failures.append(message)

    @property
    def passed(self):
        return self.n_failures == 0

    def __bool__(self):
        return self.passed

    def merge(self, other):
        self.checked += other.checked
        self.n_failures += other.n_failures
        room = MAX_LISTED - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        return self

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "n_failures": self.n_failures,
        }
