"""Named residual checks and their aggregation into a verdict."""
from dataclasses import dataclass, field
import json

PASS, FAIL, SKIP, WARN = "pass", "fail", "skip", "warn"

# condition numbers beyond this turn a passing check into a warning
COND_LIMIT = 1e12


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    residual: float
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "status": self.status,
                "residual": float(self.residual), "detail": self.detail}


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    tol: float = 1e-9

    @property
    def verdict(self):
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def first_failure(self):
        for c in self.checks:
            if c.status == FAIL:
                return c
        return None

    def add(self, name, residual, tol=None, detail="", cond=None):
        """Record ``residual <= tol`` as pass/fail; bad conditioning demotes a fail to warn."""
        tol = self.tol if tol is None else tol
        residual = float(residual)
        status = PASS if residual <= tol else FAIL
        if cond is not None and cond > COND_LIMIT:
            status = WARN
            detail = (detail + f" (condition number {cond:.3g})").strip()
        check = Check(name, status, residual, detail)
        self.checks.append(check)
        return check

    def flag(self, name, ok, detail="", residual=0.0):
        check = Check(name, PASS if ok else FAIL, float(residual), detail)
        self.checks.append(check)
        return check

    def note(self, name, detail, residual=0.0):
        """Informational entry, always passing."""
        return self.flag(name, True, detail, residual)

    def skip(self, name, detail=""):
        check = Check(name, SKIP, 0.0, detail)
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def to_dict(self):
        return {"verdict": self.verdict, "tol": self.tol,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d):
        rep = cls(tol=float(d.get("tol", 1e-9)))
        for c in d["checks"]:
            rep.checks.append(Check(c["name"], c["status"], float(c["residual"]), c.get("detail", "")))
        return rep

    def stage_summary(self):
        """(prefix, status) per check-name prefix, in order of first appearance."""
        out = {}
        for c in self.checks:
            stage = c.name.split(".", 1)[0]
            if c.status == FAIL or stage not in out:
                out[stage] = FAIL if c.status == FAIL else out.get(stage, PASS)
        return list(out.items())

    def render_text(self):
        lines = []
        for c in self.checks:
            line = f"{c.status.upper():4s}  {c.name:55s} {c.residual:.2e}"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        for stage, status in self.stage_summary():
            lines.append(f"{stage}: {status.upper()}")
        fail = self.first_failure
        tail = f"verdict: {self.verdict.upper()}"
        if fail is not None:
            tail += f" (first failing check: {fail.name})"
        lines.append(tail)
        return "\n".join(lines)
