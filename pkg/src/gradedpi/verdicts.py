from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
MARGINAL = "marginal"
FAILS = "fails"
SKIPPED = "skipped"
OUTSIDE = "outside_asymptotic_regime"


@dataclass
class Verdict:
    """Outcome of one bound or identity check.

    ``hard`` checks count towards a failing exit status; soft ones
    (asymptotic statements evaluated at small n) are informational.
    """

    name: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    hard: bool = True

    @property
    def ok(self) -> bool:
        return self.status != FAILS or not self.hard

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status, "hard": self.hard,
                "details": self.details}

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.status}"


def combine(name: str, parts: list[Verdict], **details) -> Verdict:
    """Fold a list of verdicts into one; the worst status wins."""
    statuses = [v.status for v in parts if v.hard]
    if FAILS in statuses:
        status = FAILS
    elif MARGINAL in statuses:
        status = MARGINAL
    elif parts and all(v.status == SKIPPED for v in parts):
        status = SKIPPED
    else:
        status = HOLDS
    details = dict(details)
    details.setdefault("count", len(parts))
    failures = [v.to_dict() for v in parts if not v.ok]
    if failures:
        details["failures"] = failures[:20]
    return Verdict(name, status, details)
