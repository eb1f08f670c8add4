"""Synchronous in-memory event bus for pipeline events."""

from collections import defaultdict
from typing import Any, Callable, Dict, List, Type

import structlog

from app.events.base import DomainEvent

logger = structlog.get_logger()

Handler = Callable[[DomainEvent], Any]


class EventBus:
    """In-memory event bus; handlers run in subscription order."""

    def __init__(self) -> None:
        self._handlers: Dict[Type[DomainEvent], List[Handler]] = defaultdict(list)
        self._dead_letter_queue: List[DomainEvent] = []

    def subscribe(self, event_type: Type[DomainEvent], handler: Handler) -> None:
        """Subscribe handler to an event type."""
        self._handlers[event_type].append(handler)
        logger.debug(
            "Handler subscribed",
            event_type=event_type.__name__,
            handler=getattr(handler, "__name__", repr(handler)),
        )

    def publish(self, event: DomainEvent) -> None:
        """Run every handler of the event's type.

        A failing handler does not stop the others; the event is parked in the
        dead-letter queue.
        """
        handlers = self._handlers.get(type(event), [])
        if not handlers:
            logger.debug("No handlers found", event_type=event.event_type)
            return

        failed = False
        for handler in handlers:
            try:
                handler(event)
            except Exception as e:
                failed = True
                logger.error(
                    "Event handler failed",
                    handler=getattr(handler, "__name__", repr(handler)),
                    error=str(e),
                    event_id=str(event.event_id),
                )
        if failed:
            self._dead_letter_queue.append(event)
        logger.debug(
            "Event published",
            event_type=event.event_type,
            handlers_count=len(handlers),
            event_id=str(event.event_id),
        )

    def get_dead_letter_events(self) -> List[DomainEvent]:
        """Get events that failed to process."""
        return self._dead_letter_queue.copy()

    def clear_dead_letter_queue(self) -> None:
        self._dead_letter_queue.clear()
