"""Solve outcomes and case tags."""

import math
from dataclasses import dataclass, field

MEASURE = "Measure"
NO_MEASURE = "NoMeasure"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CaseTag:
    r: int
    v: float            # int, or math.inf
    route: str
    r_prev: int = -1    # rank of the M(n-1) compression

    @property
    def gap(self):
        return self.v - self.r if self.v != math.inf else math.inf


@dataclass
class SolveOutcome:
    status: str
    measure: object = None
    reason: str = ""
    certificate: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == MEASURE

    @classmethod
    def found(cls, measure, **cert):
        return cls(MEASURE, measure, "", cert)

    @classmethod
    def refuted(cls, reason, **cert):
        return cls(NO_MEASURE, None, reason, cert)

    @classmethod
    def unknown(cls, reason, **cert):
        return cls(INCONCLUSIVE, None, reason, cert)
