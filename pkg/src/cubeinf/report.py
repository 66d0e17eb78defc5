"""Structured verdicts for inequality checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

REL_SLACK = 1e-9
ABS_SLACK = 1e-12


def within(measured: float, bound: float) -> bool:
    return measured <= bound * (1.0 + REL_SLACK) + ABS_SLACK


@dataclass
class BoundReport:
    """One inequality ``measured <= bound`` evaluated on one input.

    ``status`` is "pass"/"fail" for proved inequalities, "skipped" when the
    hypotheses do not hold, and "consistent"/"counterexample-candidate" for
    informational checks of conjectures.
    """

    name: str
    measured: float
    bound: float
    passed: bool
    context: dict = field(default_factory=dict)
    status: str = ""

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    @property
    def slack(self) -> float:
        return self.bound - self.measured

    @classmethod
    def make(cls, name: str, measured: float, bound: float, **context) -> "BoundReport":
        measured, bound = float(measured), float(bound)
        return cls(name, measured, bound, within(measured, bound), context)

    @classmethod
    def skipped(cls, name: str, reason: str, **context) -> "BoundReport":
        return cls(name, math.nan, math.nan, True, {"reason": reason, **context}, status="skipped")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": _num(self.measured),
            "bound": _num(self.bound),
            "slack": _num(self.slack),
            "pass": self.passed,
            "status": self.status,
            "context": {k: _num(v) if isinstance(v, float) else v for k, v in self.context.items()},
        }


def _num(x: float):
    return None if isinstance(x, float) and math.isnan(x) else x
