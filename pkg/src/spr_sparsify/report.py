"""Verification reports and structured failures shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class Violation:
    check: str
    message: str
    witness: Any = None

    def to_json(self) -> dict:
        return {"check": self.check, "message": self.message, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(y) for y in x)
    if hasattr(x, "vertices") and not isinstance(x, dict):
        return list(x.vertices)
    return x


@dataclass(frozen=True)
class Report:
    """Outcome of a verifier: the checks that ran, violations and statistics."""

    checks: Tuple[str, ...]
    violations: Tuple[Violation, ...] = ()
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def failed(self, check: str) -> bool:
        return any(v.check == check for v in self.violations)

    def status(self) -> Dict[str, bool]:
        return {c: not self.failed(c) for c in self.checks}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": self.status(),
            "violations": [v.to_json() for v in self.violations],
            "stats": {k: _jsonable(v) for k, v in self.stats.items()},
        }


class ReportBuilder:
    def __init__(self, *checks: str):
        self.checks = list(checks)
        self.violations: List[Violation] = []
        self.stats: Dict[str, Any] = {}

    def fail(self, check: str, message: str, witness: Any = None) -> None:
        if check not in self.checks:
            self.checks.append(check)
        self.violations.append(Violation(check, message, witness))

    def build(self) -> Report:
        return Report(tuple(self.checks), tuple(self.violations), dict(self.stats))


class StructuredFailure(RuntimeError):
    """A construction step found its input violating a guaranteed property.

    ``check`` is a stable machine-readable name for the violated property,
    ``stage`` the pipeline stage, ``witness`` the offending object.
    """

    def __init__(self, check: str, message: str, stage: Optional[str] = None, witness: Any = None):
        self.check = check
        self.stage = stage
        self.witness = witness
        prefix = f"[{stage}] " if stage else ""
        super().__init__(f"{prefix}{check}: {message}")

    def to_json(self) -> dict:
        return {"check": self.check, "stage": self.stage, "message": str(self), "witness": _jsonable(self.witness)}
