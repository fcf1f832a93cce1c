"""Verification reports: named checks with pass/fail state and witnesses."""

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __iter__(self):
        return iter(self.checks)

    def to_dict(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 **({"witness": c.witness} if c.witness else {})}
                for c in self.checks
            ],
        }


def combine(*reports):
    checks = []
    for r in reports:
        checks.extend(r.checks)
    return VerificationReport(tuple(checks))


class ReportBuilder:
    """Accumulates CheckResults; never raises on a failed check."""

    def __init__(self):
        self._checks = []

    def record(self, name, passed, witness=None):
        self._checks.append(CheckResult(name, bool(passed), witness))

    def matrices_equal(self, name, lhs, rhs):
        if lhs == rhs:
            self.record(name, True)
            return
        for i, (r1, r2) in enumerate(zip(lhs.rows, rhs.rows)):
            for j, (a, b) in enumerate(zip(r1, r2)):
                if a != b:
                    self.record(name, False, f"entry ({i},{j}): {a} != {b}")
                    return
        self.record(name, False, "shape mismatch")

    def matrix_zero(self, name, m):
        for i, row in enumerate(m.rows):
            for j, e in enumerate(row):
                if not e.is_zero():
                    self.record(name, False, f"entry ({i},{j}) = {e} != 0")
                    return
        self.record(name, True)

    def matrix_nonzero(self, name, m):
        if m.is_zero():
            self.record(name, False, "matrix vanishes")
        else:
            self.record(name, True)

    def build(self):
        return VerificationReport(tuple(self._checks))
