"""Subscribers for pipeline events."""

from typing import Any, Dict, List

from app.events.base import DomainEvent
from app.events.event_bus import EventBus
from app.events.pipeline_events import (
    CommutationChecked,
    GeneratorsPublished,
    IndexCertified,
    SemiInvariantComputed,
    VerdictReached,
)

PIPELINE_EVENTS = (
    IndexCertified,
    SemiInvariantComputed,
    GeneratorsPublished,
    CommutationChecked,
    VerdictReached,
)


class EventRecorder:
    """Collects published events in order; ``trace()`` feeds the verbose report."""

    def __init__(self) -> None:
        self.events: List[DomainEvent] = []

    def __call__(self, event: DomainEvent) -> None:
        self.events.append(event)

    def clear(self) -> None:
        self.events.clear()

    def types(self) -> List[str]:
        return [e.event_type for e in self.events]

    def trace(self) -> List[Dict[str, Any]]:
        """Event payloads numbered from one; ids and timestamps are left out."""
        return [
            {"sequence": n, "event": e.event_type, **e.payload()}
            for n, e in enumerate(self.events, start=1)
        ]


def record_all(bus: EventBus) -> EventRecorder:
    recorder = EventRecorder()
    for event_type in PIPELINE_EVENTS:
        bus.subscribe(event_type, recorder)
    return recorder
