"""
Verification commands: verify and repro
"""

import argparse
import logging
import sys

from morsebridge.config import Settings
from morsebridge.core.dependencies import load_inputs, require_s
from morsebridge.services.correspondence_service import verify_correspondence
from morsebridge.services.export_service import render_json
from morsebridge.services.repro_service import run_repro, write_fixtures

logger = logging.getLogger(__name__)


def verify_command(args: argparse.Namespace, settings: Settings) -> int:
    network, parameter = load_inputs(args.network, args.parameters)
    report = verify_correspondence(network, require_s(parameter), settings)
    sys.stdout.write(render_json(report))
    return 0 if report.passed else 1


def repro_command(args: argparse.Namespace, settings: Settings) -> int:
    if args.write_fixtures:
        written = write_fixtures(args.write_fixtures)
        logger.info("Fixtures written: %s", ", ".join(path.name for path in written))
    report = run_repro(args.name, settings)
    sys.stdout.write(render_json(report))
    return 0 if report.passed else 1


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the verification commands to the top-level parser."""
    parser = subparsers.add_parser("verify", help="run every correspondence check")
    parser.add_argument("network", metavar="NET", help="network file (.rn)")
    parser.add_argument("parameters", metavar="SPARAMS", help="S parameter file (.json)")
    parser.set_defaults(handler=verify_command)

    parser = subparsers.add_parser("repro", help="check the claims of a shipped example")
    parser.add_argument("name", metavar="NAME", help="SELF, TOGGLE, PATH3D, ATTR4D, MERGE5D or COLLAPSE5D")
    parser.add_argument("--write-fixtures", metavar="DIR", default=None, help="also write fixture files")
    parser.set_defaults(handler=repro_command)
