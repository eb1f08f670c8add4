"""Immutable result records returned by the domain modules."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from app.core.exceptions import BaseAppException


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a Lie algebra; ``violation`` carries the witness."""

    ok: bool
    violation: Optional[BaseAppException] = None

    def __post_init__(self) -> None:
        if self.ok and self.violation is not None:
            raise ValueError("A passing report cannot carry a violation")
        if not self.ok and self.violation is None:
            raise ValueError("A failing report needs a violation")

    def raise_for_violation(self) -> None:
        if self.violation is not None:
            raise self.violation

    def to_dict(self) -> Dict[str, Any]:
        if self.ok:
            return {"ok": True}
        return {"ok": False, **self.violation.to_report()}


@dataclass(frozen=True)
class IndexCertificate:
    """Index of an algebra with the random points that certify the generic rank."""

    dim: int
    index: int
    t: int
    witness_points: Tuple[Tuple[Fraction, ...], ...]
    trials: int

    def __post_init__(self) -> None:
        """Validate the rank bookkeeping."""
        if self.t % 2:
            raise ValueError("The rank of a skew form is even")
        if self.index != self.dim - self.t:
            raise ValueError("index must equal dim - t")
        if self.trials < 1:
            raise ValueError("At least one trial point is required")

    @property
    def b_g(self) -> int:
        """Maximal transcendence degree (dim + index) / 2."""
        return (self.dim + self.index) // 2


@dataclass(frozen=True)
class Character:
    """Values of a character on the basis elements."""

    values: Tuple[Fraction, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class NotSemiInvariant:
    """Witness that ``{f, x_coordinate}`` is not a constant multiple of ``f``."""

    coordinate: int
    bracket: str
    reason: str = "not_divisible"


@dataclass(frozen=True)
class CommuteWitness:
    left: str
    right: str
    bracket: str
    kind: str


@dataclass(frozen=True)
class CommuteCheckResult:
    """Pairwise commutation under both brackets; first failing pair if any."""

    ok: bool
    pairs_checked: int
    witness: Optional[CommuteWitness] = None

    def __post_init__(self) -> None:
        if self.ok == (self.witness is not None):
            raise ValueError("Exactly the failing results carry a witness")


@dataclass(frozen=True)
class SingCodim:
    """Codimension of the singular set, with p_g when it is one."""

    codim_one: bool
    p_g: Any

    @property
    def label(self) -> str:
        return "CodimOne" if self.codim_one else "CodimAtLeastTwo"


@dataclass(frozen=True)
class TrdegEstimate:
    trdeg: int
    witness_point: Optional[Tuple[Fraction, ...]]
    points_tried: int

    def __post_init__(self) -> None:
        if self.trdeg < 0:
            raise ValueError("Transcendence degree cannot be negative")


@dataclass(frozen=True)
class CompletenessResult:
    complete: bool
    trdeg: int
    b_g: int

    def __post_init__(self) -> None:
        if self.complete != (self.trdeg == self.b_g):
            raise ValueError("complete must mean trdeg == b(g)")


@dataclass(frozen=True)
class PropertyCheck:
    """One named property with its verdict and a witness when it fails."""

    name: str
    passed: bool
    witness: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class PropertyReport:
    """Named property checks, ordered as evaluated."""

    checks: Tuple[PropertyCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> PropertyCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failures(self) -> Tuple[PropertyCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)
