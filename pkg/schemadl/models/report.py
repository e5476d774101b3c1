# File: schemadl/models/report.py
"""
Check reports shared by model checking, ER state legality and OO instance
legality.
"""
from dataclasses import dataclass
from typing import Any, Tuple


@dataclass(frozen=True)
class Violation:
    """
    One failed condition.

    Attributes:
        rule: What was checked (an assertion, a legality condition)
        message: Human readable explanation
        witness: An individual, oid or tuple exhibiting the failure
    """
    rule: str
    message: str
    witness: Any = None

    def to_dict(self):
        return {
            'rule': self.rule,
            'message': self.message,
            'witness': self.witness
        }


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a check with every violation found"""
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def rules(self):
        return [v.rule for v in self.violations]

    def to_dict(self):
        return {
            'ok': self.ok,
            'violations': [v.to_dict() for v in self.violations]
        }
