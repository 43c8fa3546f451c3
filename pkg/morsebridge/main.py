"""
Command-line entry point for morsebridge
"""

import argparse
import logging
import sys
from typing import List, NoReturn, Optional

from morsebridge.api import graphs, inputs, verify
from morsebridge.config import get_settings
from morsebridge.core.exceptions import MorseBridgeError, UsageError
from morsebridge.core.logging import configure_logging

logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Argument parser that reports bad usage as a :class:`UsageError`."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = CommandParser(
        prog=settings.app_name,
        description="S and L state transition graphs, Morse graphs and their correspondence",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    inputs.register(subparsers)
    graphs.register(subparsers)
    verify.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and map errors to exit codes.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``

    Returns:
        0 on success, 1 when a check fails, 2 for malformed input
    """
    settings = get_settings()
    configure_logging(settings)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(exc.one_line() + "\n")
        return exc.exit_code
    logger.debug("Running command %s", args.command)

    try:
        return args.handler(args, settings)
    except MorseBridgeError as exc:
        if settings.debug:
            logger.exception("Command %s failed", args.command)
        sys.stderr.write(exc.one_line() + "\n")
        return exc.exit_code
    except OSError as exc:
        if settings.debug:
            logger.exception("Command %s failed", args.command)
        sys.stderr.write(f"error io: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
