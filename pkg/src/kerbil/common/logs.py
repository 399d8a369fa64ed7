import logging
import os
import sys

import structlog

from .errors import ConfigError

LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


def logging_level() -> int:
    """
    The level named by the `LOGGING_LEVEL` environment variable,
    either a number or a case-insensitive level name. Defaults to INFO.

    Raises:
        ConfigError: If the name is not a known level.
    """

    level = os.environ.get("LOGGING_LEVEL", "INFO").strip()

    try:
        return int(level)
    except ValueError:
        pass

    if (number := LEVELS.get(level.upper())) is None:
        raise ConfigError(
            f"Unknown logging level {level!r}. "
            f"Must be a number or one of {list(LEVELS)}"
        )

    return number


def configure_logging() -> None:
    """
    Route structlog to stderr, filtered by `logging_level`.
    Standard output is reserved for command results (CSV).
    """

    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(logging_level()),
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
    )
