"""Events published by the report pipeline."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from app.events.base import DomainEvent


@dataclass(frozen=True)
class IndexCertified(DomainEvent):
    """The generic rank of the structure matrix has been certified."""

    algebra: str = field(default="")
    index: int = field(default=0)
    trials: int = field(default=0)

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("Index cannot be negative")
        if self.trials < 0:
            raise ValueError("Trial count cannot be negative")
        super().__post_init__()

    def payload(self) -> Dict[str, Any]:
        return {"algebra": self.algebra, "index": self.index, "trials": self.trials}


@dataclass(frozen=True)
class SemiInvariantComputed(DomainEvent):
    algebra: str = field(default="")
    p_g: str = field(default="1")
    degree: int = field(default=0)
    branch: str = field(default="codim_two")

    def payload(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "p_g": self.p_g,
            "degree": self.degree,
            "branch": self.branch,
        }


@dataclass(frozen=True)
class GeneratorsPublished(DomainEvent):
    algebra: str = field(default="")
    kind: str = field(default="classical")
    count: int = field(default=0)
    note: Optional[str] = field(default=None)

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("Generator count cannot be negative")
        super().__post_init__()

    def payload(self) -> Dict[str, Any]:
        return {"algebra": self.algebra, "kind": self.kind, "count": self.count, "note": self.note}


@dataclass(frozen=True)
class CommutationChecked(DomainEvent):
    """Pairwise commutation of a generator set under both brackets."""

    algebra: str = field(default="")
    ok: bool = field(default=True)
    pairs_checked: int = field(default=0)

    def payload(self) -> Dict[str, Any]:
        return {"algebra": self.algebra, "ok": self.ok, "pairs_checked": self.pairs_checked}


@dataclass(frozen=True)
class VerdictReached(DomainEvent):
    """Sampling criterion and direct completeness have both been computed."""

    algebra: str = field(default="")
    criterion_complete: bool = field(default=False)
    direct_complete: bool = field(default=False)
    low_confidence: bool = field(default=False)

    @property
    def agreement(self) -> bool:
        return self.criterion_complete == self.direct_complete

    def payload(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "criterion_complete": self.criterion_complete,
            "direct_complete": self.direct_complete,
            "agreement": self.agreement,
            "low_confidence": self.low_confidence,
        }
