"""Domain events package."""

from app.events.base import DomainEvent
from app.events.event_bus import EventBus
from app.events.handlers import PIPELINE_EVENTS, EventRecorder, record_all
from app.events.pipeline_events import (
    CommutationChecked,
    GeneratorsPublished,
    IndexCertified,
    SemiInvariantComputed,
    VerdictReached,
)

__all__ = [
    # Base
    "DomainEvent",
    "EventBus",
    # Pipeline events
    "IndexCertified",
    "SemiInvariantComputed",
    "GeneratorsPublished",
    "CommutationChecked",
    "VerdictReached",
    "PIPELINE_EVENTS",
    # Handlers
    "EventRecorder",
    "record_all",
]
