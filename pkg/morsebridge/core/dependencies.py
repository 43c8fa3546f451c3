"""
Shared command dependencies: loading inputs and parsing states
"""

import argparse
import logging
from typing import Optional, Tuple

from morsebridge.core.exceptions import InvalidStateError, ParameterMismatchError
from morsebridge.models.network import RegulatoryNetwork
from morsebridge.models.parameter import LParameter, Parameter, SParameter
from morsebridge.models.state import Model, State
from morsebridge.services.network_service import load_network
from morsebridge.services.parameter_service import (
    canonical_lift,
    load_parameter,
    model_of,
    require_valid,
)

logger = logging.getLogger(__name__)


def load_inputs(network_path: str, parameter_path: str) -> Tuple[RegulatoryNetwork, Parameter]:
    """
    Load a network and a parameter file keyed by it.

    Args:
        network_path: Path of a ``.rn`` file
        parameter_path: Path of a parameter JSON file

    Returns:
        The network and the parameter in the file's own model
    """
    network = load_network(network_path)
    parameter = load_parameter(network, parameter_path)
    logger.debug("Loaded %s parameter for %s", model_of(parameter).value.upper(), network_path)
    return network, parameter


def for_model(
    network: RegulatoryNetwork, parameter: Parameter, model: Optional[Model]
) -> Parameter:
    """
    Bring a valid parameter into the requested model.

    An S parameter asked for as L is lifted with Ω; no model means the
    file's own.

    Raises:
        InvalidParameterError: The parameter is invalid or not regular
        ParameterMismatchError: An L parameter was asked for as S
    """
    require_valid(network, parameter)
    if model is None or model is model_of(parameter):
        return parameter
    if model is Model.L and isinstance(parameter, SParameter):
        return canonical_lift(network, parameter)
    raise ParameterMismatchError("an L parameter file cannot be used with --model s")


def require_s(parameter: Parameter) -> SParameter:
    if isinstance(parameter, LParameter):
        raise ParameterMismatchError("this command needs an S parameter file")
    return parameter


def parse_state(text: str, network: RegulatoryNetwork, model: Model) -> State:
    """
    Parse a comma-separated state in encoded levels.

    Raises:
        InvalidStateError: Wrong length, non-integer or out-of-range level
    """
    try:
        levels = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InvalidStateError(f"'{text}' is not a comma-separated list of levels") from exc
    if len(levels) != network.dimension:
        raise InvalidStateError(
            f"'{text}' has {len(levels)} levels, the network has {network.dimension} nodes"
        )
    scale = 2 if model is Model.L else 1
    for node, level in zip(network.nodes, levels):
        top = scale * network.out_degree(node)
        if not 0 <= level <= top:
            raise InvalidStateError(f"level {level} of '{node}' is outside 0..{top}")
    return levels


def selected_model(args: argparse.Namespace) -> Optional[Model]:
    """The ``--model`` choice as a Model, or None when absent."""
    value = getattr(args, "model", None)
    return Model(value) if value else None
