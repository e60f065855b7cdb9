from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def configure_logging(verbosity: int = 0) -> None:
    """Route package logs through rich on standard error; -v for INFO, -vv for DEBUG."""
    level = _LEVELS.get(verbosity, logging.DEBUG)
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    package_logger = logging.getLogger("stereo_vqa")
    package_logger.handlers = [handler]
    package_logger.setLevel(level)
    package_logger.propagate = False
