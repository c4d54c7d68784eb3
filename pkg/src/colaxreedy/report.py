"""Report records shared by every verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one verifier run: how many checks ran and which failed."""

    name: str
    checks: int = 0
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, rule: str, witness) -> None:
        self.violations.append((rule, witness))

    def check(self, cond: bool, rule: str, witness) -> bool:
        self.checks += 1
        if not cond:
            self.violations.append((rule, witness))
        return cond

    def first(self, rule: str | None = None):
        for r, w in self.violations:
            if rule is None or r == rule:
                return r, w
        return None

    def to_records(self, instance: str = "") -> list[dict]:
        if self.ok:
            return [{"axiom": self.name, "instance": instance, "verdict": "pass", "witness": None}]
        return [
            {"axiom": f"{self.name}:{rule}", "instance": instance, "verdict": "fail", "witness": jsonable(w)}
            for rule, w in self.violations
        ]

    def __repr__(self):
        status = "pass" if self.ok else f"FAIL ({len(self.violations)})"
        return f"Report({self.name}: {status}, {self.checks} checks)"


def jsonable(x):
    """Convert witnesses (tuples, cells, arrows) to JSON-safe values."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    return repr(x)


def canonical_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
