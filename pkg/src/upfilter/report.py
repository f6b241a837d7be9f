"""Pass/fail reports returned by the verifiers."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    message: str
    data: dict = field(default_factory=dict)

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed, "message": self.message}
        if self.data:
            out["data"] = self.data
        return out


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)

    def ok(self, name, message="", **data):
        self.checks.append(Check(name, True, message, data))

    def fail(self, name, message, **data):
        self.checks.append(Check(name, False, message, data))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def first_failure(self):
        return next(iter(self.failures()), None)

    def get(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
