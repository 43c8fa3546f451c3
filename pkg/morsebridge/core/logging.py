"""
Logging setup shared by the command line and the test suite
"""

import logging
import sys

from morsebridge.config import Settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(settings: Settings) -> None:
    """
    Configure root logging to stderr.

    Args:
        settings: Settings providing the debug flag and level
    """
    logging.basicConfig(
        level=getattr(logging, settings.effective_log_level, logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
