"""Tests for log_config: setup_logging and JSONFormatter."""

import json
import logging
import os
import sys
from unittest.mock import patch

from log_config import setup_logging, JSONFormatter


def _record(msg="hello world", level=logging.INFO, exc_info=None):
    return logging.LogRecord(
        name="test", level=level, pathname="", lineno=0,
        msg=msg, args=(), exc_info=exc_info,
    )


class TestSetupLogging:

    def teardown_method(self):
        """Reset root logger after each test."""
        root = logging.getLogger()
        for h in root.handlers[:]:
            root.removeHandler(h)

    def test_default_is_text_format(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("LOG_FORMAT", None)
            setup_logging()
        root = logging.getLogger()
        assert len(root.handlers) == 1
        assert not isinstance(root.handlers[0].formatter, JSONFormatter)

    def test_json_format(self):
        with patch.dict(os.environ, {"LOG_FORMAT": "json"}):
            setup_logging()
        root = logging.getLogger()
        assert isinstance(root.handlers[0].formatter, JSONFormatter)

    def test_log_level_override(self):
        with patch.dict(os.environ, {"IRREDFORGE_LOG": "debug"}):
            setup_logging()
        assert logging.getLogger().level == logging.DEBUG

    def test_log_level_default_is_warning(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("IRREDFORGE_LOG", None)
            setup_logging()
        assert logging.getLogger().level == logging.WARNING

    def test_unknown_level_falls_back(self):
        with patch.dict(os.environ, {"IRREDFORGE_LOG": "chatty"}):
            setup_logging()
        assert logging.getLogger().level == logging.WARNING

    def test_repeated_setup_keeps_one_handler(self):
        setup_logging()
        setup_logging()
        assert len(logging.getLogger().handlers) == 1


class TestJSONFormatter:

    def test_basic_message(self):
        parsed = json.loads(JSONFormatter().format(_record()))
        assert parsed["message"] == "hello world"
        assert parsed["level"] == "INFO"
        assert parsed["logger"] == "test"
        assert "timestamp" in parsed

    def test_exception_included(self):
        try:
            raise ValueError("test error")
        except ValueError:
            exc_info = sys.exc_info()
        parsed = json.loads(JSONFormatter().format(_record("enumeration failed", logging.ERROR, exc_info)))
        assert parsed["exception"]["type"] == "ValueError"
        assert "test error" in parsed["exception"]["message"]
        assert len(parsed["exception"]["traceback"]) > 0

    def test_extra_fields_propagated(self):
        record = _record("orbit closed")
        record.field = "2,4,y^4+y+1"
        record.prime = 5
        record.members = 4644
        parsed = json.loads(JSONFormatter().format(record))
        assert parsed["field"] == "2,4,y^4+y+1"
        assert parsed["prime"] == 5
        assert parsed["members"] == 4644

    def test_missing_extra_fields_not_included(self):
        parsed = json.loads(JSONFormatter().format(_record("simple message")))
        assert "field" not in parsed
        assert "branch" not in parsed

    def test_output_is_single_line(self):
        output = JSONFormatter().format(_record("line1\nline2"))
        # json.dumps escapes newlines
        assert "\n" not in output
