"""Base domain event class."""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict
from uuid import UUID, uuid4


@dataclass(frozen=True)
class DomainEvent:
    """Base class for pipeline events.

    ``run_id`` is the only required field so that subclasses can add their own
    defaulted fields; the remaining fields are filled in ``__post_init__``.
    """

    run_id: UUID
    event_id: UUID = field(default_factory=uuid4, init=False)
    occurred_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc), init=False)
    event_type: str = field(default="", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "event_type", self.__class__.__name__)

    def payload(self) -> Dict[str, Any]:
        """Subclass fields only."""
        return {}

    @property
    def event_data(self) -> Dict[str, Any]:
        """Get event data for logging."""
        return {
            "event_id": str(self.event_id),
            "event_type": self.event_type,
            "run_id": str(self.run_id),
            "occurred_at": self.occurred_at.isoformat(),
            **self.payload(),
        }
