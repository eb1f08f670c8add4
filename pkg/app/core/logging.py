"""structlog setup for the command line.

Reports own stdout, so every log entry is written to stderr.
"""

import logging
import sys
from typing import Any, Dict, List, Literal, Optional

import structlog
from structlog.types import EventDict, Processor

from app import __version__


def add_app_context(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Tag entries with the toolkit name and version."""
    event_dict.setdefault("app", "argshift")
    event_dict.setdefault("version", __version__)
    return event_dict


def _renderers(format_type: Literal["json", "console"], development: bool) -> List[Processor]:
    if format_type == "console":
        return [structlog.dev.ConsoleRenderer(colors=development and sys.stderr.isatty())]
    return [structlog.processors.format_exc_info, structlog.processors.JSONRenderer(sort_keys=True)]


def setup_logging(
    level: str = "WARNING",
    format_type: Literal["json", "console"] = "json",
    development: bool = False,
) -> None:
    """Route structlog through stdlib logging at ``level``."""
    logging.root.handlers.clear()
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level.upper()),
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            add_app_context,
            *_renderers(format_type, development),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def log_stage(stage: str, duration: float, extra: Optional[Dict[str, Any]] = None) -> None:
    """One ``Pipeline stage completed`` entry; ``duration`` is in seconds."""
    structlog.get_logger("argshift.pipeline").info(
        "Pipeline stage completed",
        stage=stage,
        duration_ms=round(duration * 1000, 2),
        **(extra or {}),
    )
