"""Тесты для настройки логирования."""

import json
import logging

import structlog

from app import __version__
from app.core.logging import add_app_context, log_stage, setup_logging


class TestLogging:
    """Тесты для структурированного логирования."""

    def test_add_app_context(self):
        """Контекст приложения добавляется в запись."""
        event = add_app_context(None, "info", {"event": "x"})
        assert event["app"] == "argshift"
        assert event["version"] == __version__

    def test_setup_logging_json(self, capsys):
        """JSON-записи идут в stderr, stdout остаётся для отчётов."""
        setup_logging(level="INFO", format_type="json")
        assert logging.root.level == logging.INFO
        assert structlog.is_configured()
        structlog.get_logger("argshift.test").info("Index certified", index=1)
        out, err = capsys.readouterr()
        assert out == ""
        record = json.loads(err.strip().splitlines()[-1])
        assert record["event"] == "Index certified"
        assert record["index"] == 1
        assert record["level"] == "info"
        assert record["app"] == "argshift"

    def test_setup_logging_console(self):
        """Настройка консольного вывода."""
        setup_logging(level="DEBUG", format_type="console", development=True)
        assert logging.root.level == logging.DEBUG

    def test_level_filters_entries(self, capsys):
        """Записи ниже уровня отбрасываются."""
        setup_logging(level="WARNING")
        structlog.get_logger("argshift.test").info("hidden")
        assert capsys.readouterr().err == ""

    def test_log_stage(self):
        """Запись о завершении стадии."""
        setup_logging(level="INFO")
        with structlog.testing.capture_logs() as logs:
            log_stage("index", 0.0123, {"index": 1})
        assert logs[0]["event"] == "Pipeline stage completed"
        assert logs[0]["stage"] == "index"
        assert logs[0]["duration_ms"] == 12.3
        assert logs[0]["index"] == 1
