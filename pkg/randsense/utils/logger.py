"""Logging configuration and utilities."""

import json
import logging
import sys
from datetime import datetime
from typing import Any, Dict, Optional

# Attributes every LogRecord carries; anything else came in through `extra=`.
_RESERVED_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {
    "message",
    "asctime",
    "taskName",
}

_DATEFMT = "%Y-%m-%d %H:%M:%S"


class StructuredFormatter(logging.Formatter):
    """
    Formatter that appends structured context to log messages.

    Fields passed through ``logger.info(..., extra={...})`` are rendered as
    ``key=value`` pairs after the message, or the whole record is emitted as
    one JSON object per line when ``json_lines`` is set.
    """

    def __init__(self, datefmt: Optional[str] = _DATEFMT, json_lines: bool = False):
        super().__init__(datefmt=datefmt)
        self.json_lines = json_lines

    def format(self, record: logging.LogRecord) -> str:
        """
        Format log record with structured context.

        Args:
            record: Log record to format

        Returns:
            Formatted log string
        """
        log_data: Dict[str, Any] = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        context = {
            key: value
            for key, value in record.__dict__.items()
            if key not in _RESERVED_ATTRS and not key.startswith("_")
        }
        if context:
            log_data["context"] = context

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        if self.json_lines:
            return json.dumps(log_data, default=str)

        line = f"{log_data['timestamp']} - {log_data['logger']} - {log_data['level']} - {log_data['message']}"
        if context:
            line += " | " + " | ".join(f"{k}={v}" for k, v in context.items())
        if "exception" in log_data:
            line += f"\n{log_data['exception']}"
        return line


def setup_logger(
    name: str = "randsense",
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    json_lines: bool = False,
) -> logging.Logger:
    """
    Set up structured logging with console and optional file handlers.

    Args:
        name: Logger name (child loggers such as ``randsense.precoding.sgp`` inherit it)
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional log file path
        json_lines: Emit one JSON object per record instead of text lines

    Returns:
        Configured logger instance
    """
    level = getattr(logging, log_level.upper())
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.handlers.clear()
    logger.propagate = False

    formatter = StructuredFormatter(json_lines=json_lines)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.info(f"Logging to file: {log_file}")
        except OSError as e:
            logger.warning(f"Failed to set up file logging to {log_file}: {e}")

    return logger


def get_logger(name: str = "randsense") -> logging.Logger:
    """
    Get an existing logger instance.

    Loggers in the ``randsense.*`` namespace propagate to the project logger;
    if that has no handlers yet, a basic structured console handler is attached
    to it so records are not dropped before ``setup_logger`` runs.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    logger = logging.getLogger(name)
    target = logging.getLogger("randsense") if name.split(".")[0] == "randsense" else logger

    if not target.handlers:
        target.setLevel(logging.INFO)
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(StructuredFormatter())
        target.addHandler(handler)

    return logger


def log_error_with_context(
    logger: logging.Logger,
    message: str,
    error: BaseException,
    context: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Log an error with structured context information.

    Args:
        logger: Logger instance
        message: Error message
        error: Exception object
        context: Optional dictionary of context information
    """
    extra = dict(context or {})
    extra.update({
        "error_type": type(error).__name__,
        "error_message": str(error),
        "logged_at": datetime.now().isoformat(),
    })
    logger.error(message, extra=extra, exc_info=error)
