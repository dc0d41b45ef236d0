"""Pass/fail reports shared by validators, verifiers and the CLI."""

from dataclasses import dataclass, field


def jsonable(obj):
    """Best-effort conversion of witnesses (group elements, frozensets, ...) to JSON."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        items = [jsonable(x) for x in obj]
        return sorted(items, key=lambda x: (str(type(x)), str(x)))
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return str(obj)


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_json(self):
        out = {"name": self.name, "pass": self.passed}
        if self.detail is not None:
            out["detail"] = jsonable(self.detail)
        return out


@dataclass
class Report:
    claim: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name, passed, detail=None):
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))
        return other.passed

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def first_failure(self):
        bad = self.failures()
        return bad[0] if bad else None

    def to_json(self):
        out = {
            "claim": self.claim,
            "checks": [c.to_json() for c in self.checks],
            "pass": self.passed,
        }
        if self.data:
            out["data"] = jsonable(self.data)
        return out

    def __bool__(self):
        return self.passed

    def summary(self):
        lines = [f"{self.claim}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else "BAD"
            tail = "" if c.detail is None else f"  {jsonable(c.detail)}"
            lines.append(f"  [{mark}] {c.name}{tail}")
        return "\n".join(lines)
