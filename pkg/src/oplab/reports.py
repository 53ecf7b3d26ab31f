"""Structured verdict reports.

Boundedness verdicts are not bare booleans: each report carries the
balance-relation arithmetic and every strict inequality with both sides
evaluated, so a report is self-auditing and can be serialized as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["RelationCheck", "InequalityCheck", "ConditionReport", "RELATION_EPS"]

# The balance relation is a real equation; it is tested with this
# absolute tolerance (the CLI offers solve-gamma to hit it exactly).
RELATION_EPS = 1e-12


def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


@dataclass(frozen=True)
class RelationCheck:
    """An equality constraint checked to absolute epsilon."""

    name: str
    lhs: float
    rhs: float
    epsilon: float = RELATION_EPS

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return abs(self.residual) <= self.epsilon

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "residual": _jsonable(self.residual),
            "epsilon": self.epsilon,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class InequalityCheck:
    """A (possibly one-sided) strict inequality lower < value < upper."""

    name: str
    value: float
    lower: float = -math.inf
    upper: float = math.inf

    @property
    def holds(self) -> bool:
        return self.lower < self.value < self.upper

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lower": _jsonable(self.lower),
            "value": _jsonable(self.value),
            "upper": _jsonable(self.upper),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a boundedness criterion.

    ``decided_by`` names the clause that settled the verdict;
    ``cross_checks`` holds equivalent reformulations that are displayed
    for auditing but do not enter the verdict.
    """

    operator: str
    regime: str
    bounded: bool
    decided_by: str
    relation: RelationCheck | None = None
    inequalities: tuple[InequalityCheck, ...] = ()
    cross_checks: tuple[InequalityCheck, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "operator": self.operator,
            "regime": self.regime,
            "bounded": self.bounded,
            "decided_by": self.decided_by,
            "relation": self.relation.to_dict() if self.relation else None,
            "inequalities": [c.to_dict() for c in self.inequalities],
            "cross_checks": [c.to_dict() for c in self.cross_checks],
            "notes": list(self.notes),
        }
