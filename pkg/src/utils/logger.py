# src/utils/logger.py

import logging
from rich.console import Console
from rich.logging import RichHandler
from utils.config import get_settings

LOGGER_NAME = "botlex"


def _build_logger() -> logging.Logger:
    """Configures the package logger once; output goes to stderr so reports on stdout stay clean."""
    log = logging.getLogger(LOGGER_NAME)
    if not log.handlers:
        handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        log.addHandler(handler)
        log.propagate = False
    log.setLevel(get_settings().log_level.upper())
    return log


def set_level(level: str) -> None:
    logger.setLevel(level.upper())


logger = _build_logger()
