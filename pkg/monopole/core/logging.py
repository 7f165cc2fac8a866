import logging
import sys
from pathlib import Path
from typing import Optional, Union

from pythonjsonlogger import jsonlogger

from monopole.core.config import settings

_HANDLER_TAG = "_monopole_handler"


def _tag(handler: logging.Handler) -> logging.Handler:
    setattr(handler, _HANDLER_TAG, True)
    return handler


def setup_logging(
    level: Optional[Union[str, int]] = None,
    log_dir: Optional[Path] = None,
    to_file: Optional[bool] = None,
    quiet: bool = False,
) -> logging.Logger:
    """Configure package logging; calling it again replaces the handlers."""

    level = level if level is not None else settings.LOG_LEVEL
    log_dir = Path(log_dir) if log_dir is not None else settings.LOG_DIR
    to_file = settings.LOG_TO_FILE if to_file is None else to_file

    # Create formatters
    detailed_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    simple_formatter = logging.Formatter(
        "%(levelname)s - %(message)s"
    )

    json_formatter = jsonlogger.JsonFormatter(
        "%(asctime)s %(name)s %(levelname)s %(message)s"
    )

    root_logger = logging.getLogger("monopole")
    root_logger.setLevel(level)
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.WARNING if quiet else level)
    console_handler.setFormatter(simple_formatter)
    root_logger.addHandler(_tag(console_handler))

    if to_file:
        log_dir.mkdir(parents=True, exist_ok=True)

        # File handler for errors
        error_handler = logging.FileHandler(log_dir / "error.log")
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(_tag(error_handler))

        # JSON lines for all logs
        file_handler = logging.FileHandler(log_dir / "monopole.jsonl")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(json_formatter)
        root_logger.addHandler(_tag(file_handler))

    return root_logger


# Create logger instance
logger = logging.getLogger("monopole")
