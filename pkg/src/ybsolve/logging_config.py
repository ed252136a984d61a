"""
Logging for ybsolve.

Handlers live on the "ybsolve" package logger only; module loggers propagate
to it. Output goes to stderr because stdout carries ybs, DOT, TSV and JSON.
"""

import logging
import logging.handlers
import os
import sys
from typing import Optional

from ybsolve.config import settings

PACKAGE = "ybsolve"
FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEBUG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"


def _level_name(level: Optional[str]) -> str:
    return (os.getenv("LOG_LEVEL") or level or settings.log_level).upper()


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """Attach the stderr handler and the optional rotating file to the package logger once."""
    logger = logging.getLogger(PACKAGE)
    if logger.handlers:
        return logger

    log_level = _level_name(level)
    logger.setLevel(getattr(logging, log_level, logging.INFO))
    formatter = logging.Formatter(DEBUG_FORMAT if log_level == "DEBUG" else FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    file_path = os.getenv("LOG_FILE") or log_file or settings.log_file
    if file_path:
        log_dir = os.path.dirname(file_path)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(file_path, maxBytes=10 * 1024 * 1024, backupCount=5)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def get_logger(name: str) -> logging.Logger:
    """Logger for a ybsolve module (typically __name__)."""
    setup_logging()
    return logging.getLogger(name)


def set_level(level: str) -> None:
    """Change the level of every ybsolve logger for this run."""
    setup_logging().setLevel(getattr(logging, level.upper(), logging.INFO))
