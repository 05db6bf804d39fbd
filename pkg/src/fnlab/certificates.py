"""Numbers tagged with what they certify."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import ValidationError


class BoundKind(str, enum.Enum):
    EXACT = "exact"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class CertifiedBound:
    """A nonnegative value with its certificate kind and provenance.

    ``source`` names the formula that produced the value; ``budget`` is the
    enumeration budget K when one was used; ``meta`` carries diagnostics
    (skipped classes, measured constants, flags).
    """

    value: float
    kind: BoundKind
    source: str
    budget: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", BoundKind(self.kind))
        if not (self.value >= 0.0) or math.isnan(self.value):
            raise ValidationError(f"certified value must be >= 0, got {self.value!r}")

    def __float__(self):
        return float(self.value)
