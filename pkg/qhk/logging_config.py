"""
Logging setup for the qhk CLI and library.

Reports are printed on stdout, so records go to stderr and optionally to a
rotating file. Boundary assembly and identity checks may run in worker
processes; the file format carries the process id to tell them apart.
"""

import logging
import sys
import time
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Iterator, Optional

CONSOLE_FORMAT = "%(levelname)-7s %(name)s: %(message)s"
FILE_FORMAT = (
    "%(asctime)s pid=%(process)d %(levelname)s %(name)s: %(message)s"
)
FILE_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def resolve_level(level: str) -> int:
    """Numeric level for a name; unknown names fall back to INFO"""
    value = logging.getLevelName(str(level).upper())
    return value if isinstance(value, int) else logging.INFO


def setup_logging(
    log_path: Optional[str] = None,
    log_level: str = "INFO",
    max_size_mb: int = 10,
    backup_count: int = 3,
) -> logging.Logger:
    """
    Route qhk logging to stderr and, when log_path is set, a rotating file.

    Existing root handlers are replaced, so calling this twice does not
    duplicate output.

    Returns:
        The configured root logger
    """
    level = resolve_level(log_level)
    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root.addHandler(console)

    if log_path:
        Path(log_path).parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(
            log_path,
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=backup_count,
            encoding="utf-8",
        )
        handler.setFormatter(
            logging.Formatter(FILE_FORMAT, datefmt=FILE_DATE_FORMAT)
        )
        root.addHandler(handler)

    logging.getLogger(__name__).debug(
        "Logging at %s to stderr%s",
        logging.getLevelName(level),
        f" and {log_path}" if log_path else "",
    )
    return root


def setup_logging_from_config(config) -> logging.Logger:
    """Configure logging from the logging.* section of a Config"""
    return setup_logging(
        log_path=config.log_path,
        log_level=config.log_level,
        max_size_mb=config.log_max_size_mb,
        backup_count=config.log_backup_count,
    )


@contextmanager
def stage(logger: logging.Logger, label: str, *args) -> Iterator[None]:
    """
    Log how long a computation stage took, at INFO.

    Usage:
        with stage(self.logger, "Smith form of d_%d", n):
            ...
    """
    started = time.perf_counter()
    yield
    logger.info(
        label + " took %.2fs", *args, time.perf_counter() - started
    )


class LoggerMixin:
    """Provides a per-class `logger` named module.ClassName"""

    @property
    def logger(self) -> logging.Logger:
        if not hasattr(self, "_logger"):
            cls = type(self)
            self._logger = logging.getLogger(
                f"{cls.__module__}.{cls.__name__}"
            )
        return self._logger


def log_exception(
    logger: logging.Logger, message: str, exc: Exception
) -> None:
    """Log an unexpected exception with its traceback"""
    logger.error(
        "%s: %s: %s", message, type(exc).__name__, exc, exc_info=True
    )
