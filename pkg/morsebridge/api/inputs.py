"""
Input commands: validate, signature, lift and print
"""

import argparse
import logging
import sys

from morsebridge.config import Settings
from morsebridge.core.dependencies import for_model, load_inputs, require_s, selected_model
from morsebridge.models.state import Model
from morsebridge.schemas.parameter import SignatureOut, ValidationReport, ViolationOut
from morsebridge.services.export_service import format_state, render_json
from morsebridge.services.network_service import load_network, print_network
from morsebridge.services.parameter_service import (
    canonical_lift,
    class_signature,
    dump_parameter,
    model_of,
    validate,
)

logger = logging.getLogger(__name__)


def add_input_arguments(parser: argparse.ArgumentParser) -> None:
    """Positional NET and PARAMS plus the optional --model switch."""
    parser.add_argument("network", metavar="NET", help="network file (.rn)")
    parser.add_argument("parameters", metavar="PARAMS", help="parameter file (.json)")
    parser.add_argument(
        "--model",
        type=str.lower,
        choices=[model.value for model in Model],
        default=None,
        help="s or l; an S file is lifted when l is asked for (default: the file's model)",
    )


def validate_command(args: argparse.Namespace, settings: Settings) -> int:
    """
    Report every violated parameter constraint.

    Returns:
        0 when the parameter is valid and regular, 1 otherwise
    """
    network, parameter = load_inputs(args.network, args.parameters)
    model = selected_model(args)
    if model is not None and model is not model_of(parameter):
        parameter = for_model(network, parameter, model)
    violations = validate(network, parameter)
    report = ValidationReport(
        model=model_of(parameter),
        valid=not violations,
        violations=[ViolationOut(kind=v.kind, subject=v.subject, detail=v.detail) for v in violations],
    )
    sys.stdout.write(render_json(report))
    if violations:
        logger.warning("%d violation(s) in %s", len(violations), args.parameters)
        return 1
    return 0


def signature_command(args: argparse.Namespace, settings: Settings) -> int:
    network, parameter = load_inputs(args.network, args.parameters)
    parameter = for_model(network, parameter, selected_model(args))
    signature = class_signature(network, parameter)
    document = SignatureOut(
        model=model_of(parameter),
        orders={node: list(signature.order.orders[node]) for node in network.nodes},
        targets={
            format_state(state): list(target)
            for state, target in sorted(signature.target_table.items())
        },
    )
    sys.stdout.write(render_json(document))
    return 0


def lift_command(args: argparse.Namespace, settings: Settings) -> int:
    network, parameter = load_inputs(args.network, args.parameters)
    lifted = canonical_lift(network, require_s(parameter))
    sys.stdout.write(dump_parameter(network, lifted))
    return 0


def print_command(args: argparse.Namespace, settings: Settings) -> int:
    sys.stdout.write(print_network(load_network(args.network)) + "\n")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the input commands to the top-level parser."""
    parser = subparsers.add_parser("validate", help="check a parameter file against its network")
    add_input_arguments(parser)
    parser.set_defaults(handler=validate_command)

    parser = subparsers.add_parser("signature", help="threshold orders and discrete target map")
    add_input_arguments(parser)
    parser.set_defaults(handler=signature_command)

    parser = subparsers.add_parser("lift", help="Ω-lift an S parameter file to an L parameter file")
    parser.add_argument("network", metavar="NET", help="network file (.rn)")
    parser.add_argument("parameters", metavar="SPARAMS", help="S parameter file (.json)")
    parser.set_defaults(handler=lift_command)

    parser = subparsers.add_parser("print", help="canonical network text")
    parser.add_argument("network", metavar="NET", help="network file (.rn)")
    parser.set_defaults(handler=print_command)
