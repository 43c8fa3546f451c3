"""
Graph commands: stg, morse and path
"""

import argparse
import logging
import sys

from morsebridge.api.inputs import add_input_arguments
from morsebridge.config import Settings
from morsebridge.core.dependencies import for_model, load_inputs, parse_state, selected_model
from morsebridge.schemas.graph import PathResult
from morsebridge.services.correspondence_service import find_path
from morsebridge.services.export_service import (
    morse_graph_dot,
    morse_graph_out,
    render_json,
    transition_graph_dot,
    transition_graph_out,
)
from morsebridge.services.morse_service import morse_graph
from morsebridge.services.parameter_service import model_of
from morsebridge.services.stg_service import build_stg

logger = logging.getLogger(__name__)


def _graph(args: argparse.Namespace):
    network, parameter = load_inputs(args.network, args.parameters)
    parameter = for_model(network, parameter, selected_model(args))
    return network, parameter, build_stg(network, parameter)


def stg_command(args: argparse.Namespace, settings: Settings) -> int:
    _, _, graph = _graph(args)
    if args.format == "dot":
        sys.stdout.write(transition_graph_dot(graph))
    else:
        sys.stdout.write(render_json(transition_graph_out(graph)))
    return 0


def morse_command(args: argparse.Namespace, settings: Settings) -> int:
    _, _, graph = _graph(args)
    mg = morse_graph(graph)
    if args.format == "dot":
        sys.stdout.write(morse_graph_dot(mg))
    else:
        sys.stdout.write(render_json(morse_graph_out(mg)))
    return 0


def path_command(args: argparse.Namespace, settings: Settings) -> int:
    """
    Shortest path query between two states.

    Returns:
        0 whether or not a path exists; the answer is in the JSON payload
    """
    network, parameter, graph = _graph(args)
    model = model_of(parameter)
    source = parse_state(args.source, network, model)
    target = parse_state(args.target, network, model)
    path = find_path(graph, source, target, strict=args.strict)
    logger.info("Path %s -> %s: %s", source, target, "found" if path else "none")
    result = PathResult(
        model=model,
        source=list(source),
        target=list(target),
        strict=args.strict,
        exists=path is not None,
        path=[list(state) for state in path or []],
    )
    sys.stdout.write(render_json(result))
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the graph commands to the top-level parser."""
    for name, handler, help_text in (
        ("stg", stg_command, "state transition graph"),
        ("morse", morse_command, "Morse graph with labels and attractors"),
    ):
        parser = subparsers.add_parser(name, help=help_text)
        add_input_arguments(parser)
        parser.add_argument("--format", choices=["dot", "json"], default="json")
        parser.set_defaults(handler=handler)

    parser = subparsers.add_parser("path", help="shortest path between two states")
    add_input_arguments(parser)
    parser.add_argument("--from", dest="source", required=True, metavar="STATE")
    parser.add_argument("--to", dest="target", required=True, metavar="STATE")
    parser.add_argument("--strict", action="store_true", help="require a nonempty path")
    parser.set_defaults(handler=path_command)
