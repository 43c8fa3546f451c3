"""
Parameter service: validation, threshold orders, discrete target maps and
the canonical S-to-L lift

Production rates depend on a domain only through its switch counts: for
node ``i`` the count is how many of its thresholds lie below the point.
Counts range over the S state space, so every rate evaluation in both
models goes through a :class:`ProductionRates` table indexed by S states.
"""

import json
import logging
from fractions import Fraction
from functools import reduce
from itertools import product
from operator import mul
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Tuple, Union

from pydantic import ValidationError

from morsebridge.core.exceptions import (
    FocalPointInBridgeError,
    InvalidParameterError,
    ParameterMismatchError,
    SignatureMismatchError,
)
from morsebridge.models.network import Edge, NodeId, RegulatoryNetwork, Sign
from morsebridge.models.parameter import (
    ClassSignature,
    LEdgeParams,
    LParameter,
    Parameter,
    SEdgeParams,
    SParameter,
    ThresholdGrid,
    ThresholdOrder,
    Violation,
)
from morsebridge.models.state import Model, State
from morsebridge.schemas.parameter import LEdgeEntry, ParameterFile, SEdgeEntry

logger = logging.getLogger(__name__)


def model_of(parameter: Parameter) -> Model:
    return Model.L if isinstance(parameter, LParameter) else Model.S


def _lower_bound(parameter: Parameter, edge: Edge) -> Fraction:
    values = parameter.edges[edge]
    return values.theta_minus if isinstance(values, LEdgeParams) else values.theta


def s_state_space(network: RegulatoryNetwork) -> Iterator[State]:
    """All S states in lexicographic order."""
    return product(*(range(network.out_degree(node) + 1) for node in network.nodes))


# Threshold order and grid


def threshold_order(network: RegulatoryNetwork, parameter: Parameter) -> ThresholdOrder:
    """
    Order the targets of every node by ascending threshold.

    L parameters are ordered by their bridge intervals, which is well
    defined once the intervals of a node are disjoint.
    """
    orders = {}
    for node in network.nodes:
        targets = network.targets(node)
        orders[node] = tuple(
            sorted(
                targets,
                key=lambda t: (_lower_bound(parameter, network.edge(node, t)), network.index[t]),
            )
        )
    return ThresholdOrder(orders)


def threshold_grid(network: RegulatoryNetwork, parameter: Parameter) -> ThresholdGrid:
    order = threshold_order(network, parameter)
    points: Dict[NodeId, Tuple[Fraction, ...]] = {}
    for node in network.nodes:
        values: List[Fraction] = [Fraction(0)]
        for target in order.orders[node]:
            edge_values = parameter.edges[network.edge(node, target)]
            if isinstance(edge_values, LEdgeParams):
                values.extend((edge_values.theta_minus, edge_values.theta_plus))
            else:
                values.append(edge_values.theta)
        points[node] = tuple(values)
    return ThresholdGrid(model_of(parameter), order, points)


# Production rates


class ProductionRates:
    """
    Λ and focal points indexed by switch-count vectors.

    A count vector lists, per node, how many of its thresholds lie below
    the point of interest. Edge ``i -> j`` is switched on once the count
    of ``i`` reaches the rank of ``j`` in the threshold order of ``i``.
    """

    def __init__(self, network: RegulatoryNetwork, parameter: Parameter):
        self.network = network
        self.parameter = parameter
        self.order = threshold_order(network, parameter)
        self._ranks = {
            edge: self.order.rank(edge.source, edge.target) for edge in network.edges
        }
        self._cache: Dict[State, Tuple[Fraction, ...]] = {}

    def sigma(self, edge: Edge, counts: State) -> Fraction:
        values = self.parameter.edges[edge]
        high = counts[self.network.index[edge.source]] >= self._ranks[edge]
        if edge.sign is Sign.REPRESSION:
            high = not high
        return values.u if high else values.l

    def rates(self, counts: State) -> Tuple[Fraction, ...]:
        """Λ(counts), one entry per node."""
        cached = self._cache.get(counts)
        if cached is None:
            cached = tuple(
                reduce(
                    mul,
                    (
                        sum(
                            (self.sigma(self.network.edge(term.source, node), counts) for term in group),
                            Fraction(0),
                        )
                        for group in self.network.logic(node).groups
                    ),
                    Fraction(1),
                )
                for node in self.network.nodes
            )
            self._cache[counts] = cached
        return cached

    def focal(self, counts: State) -> Tuple[Fraction, ...]:
        """Γ⁻¹Λ(counts)."""
        gamma = self.parameter.gamma
        return tuple(
            rate / gamma[node] for rate, node in zip(self.rates(counts), self.network.nodes)
        )


# Validation


def _structure_violations(
    network: RegulatoryNetwork, gamma: Mapping[NodeId, Fraction], edges: Mapping[Edge, object]
) -> List[Violation]:
    violations = []
    for node in network.nodes:
        if node not in gamma:
            violations.append(Violation("missing", node, "no gamma for node"))
    for node in gamma:
        if node not in network.index:
            violations.append(Violation("extra", node, "gamma for unknown node"))
    for edge in network.sorted_edges:
        if edge not in edges:
            violations.append(Violation("missing", edge.key, "no values for edge"))
    for edge in sorted(edges):
        if edge not in network.edges:
            violations.append(Violation("extra", edge.key, "values for an edge not in the network"))
    return violations


def _common_violations(network: RegulatoryNetwork, parameter: Parameter) -> List[Violation]:
    violations = []
    for node in network.nodes:
        if parameter.gamma[node] <= 0:
            violations.append(Violation("positivity", node, "gamma must be positive"))
    for edge in network.sorted_edges:
        values = parameter.edges[edge]
        if values.l <= 0:
            violations.append(Violation("positivity", edge.key, "l must be positive"))
        if values.l >= values.u:
            violations.append(Violation("ordering", edge.key, f"l={values.l} is not below u={values.u}"))
    return violations


def _format_state(state: State) -> str:
    return "(" + ",".join(str(level) for level in state) + ")"


def validate_s(network: RegulatoryNetwork, parameter: SParameter) -> List[Violation]:
    """
    Check an S parameter for validity and regularity.

    Structural mismatches are reported with kind ``missing``/``extra`` and
    stop the numeric checks.
    """
    violations = _structure_violations(network, parameter.gamma, parameter.edges)
    if violations:
        return violations
    violations.extend(_common_violations(network, parameter))
    for edge in network.sorted_edges:
        if parameter.edges[edge].theta <= 0:
            violations.append(Violation("positivity", edge.key, "theta must be positive"))
    for node in network.nodes:
        thetas = [parameter.edges[network.edge(node, t)].theta for t in network.targets(node)]
        if len(set(thetas)) != len(thetas):
            violations.append(
                Violation("distinct-thresholds", node, "two out-edges share a threshold")
            )
    if violations:
        return violations

    rates = ProductionRates(network, parameter)
    for state in s_state_space(network):
        focal = rates.focal(state)
        for position, node in enumerate(network.nodes):
            for target in network.targets(node):
                theta = parameter.edges[network.edge(node, target)].theta
                if focal[position] == theta:
                    violations.append(
                        Violation(
                            "regularity",
                            f"{node}@{_format_state(state)}",
                            f"focal point on threshold theta_{target},{node}={theta}",
                        )
                    )
    return violations


def validate_l(network: RegulatoryNetwork, parameter: LParameter) -> List[Violation]:
    """Check an L parameter; regularity is tested on constant domains only."""
    violations = _structure_violations(network, parameter.gamma, parameter.edges)
    if violations:
        return violations
    violations.extend(_common_violations(network, parameter))
    for edge in network.sorted_edges:
        values = parameter.edges[edge]
        if values.theta_minus <= 0:
            violations.append(Violation("positivity", edge.key, "theta_minus must be positive"))
        if values.theta_minus >= values.theta_plus:
            violations.append(
                Violation("ordering", edge.key, "theta_minus is not below theta_plus")
            )
    for node in network.nodes:
        intervals = sorted(
            (parameter.edges[network.edge(node, t)].theta_minus, parameter.edges[network.edge(node, t)].theta_plus)
            for t in network.targets(node)
        )
        for (_, upper), (lower, _) in zip(intervals, intervals[1:]):
            if upper >= lower:
                violations.append(
                    Violation("disjoint-intervals", node, "bridge intervals of two out-edges meet")
                )
    if violations:
        return violations

    rates = ProductionRates(network, parameter)
    for state in s_state_space(network):
        focal = rates.focal(state)
        for position, node in enumerate(network.nodes):
            for target in network.targets(node):
                values = parameter.edges[network.edge(node, target)]
                for name, bound in (("theta_minus", values.theta_minus), ("theta_plus", values.theta_plus)):
                    if focal[position] == bound:
                        violations.append(
                            Violation(
                                "regularity",
                                f"{node}@{_format_state(tuple(2 * level for level in state))}",
                                f"focal point on {name}_{target},{node}={bound}",
                            )
                        )
    return violations


def validate(network: RegulatoryNetwork, parameter: Parameter) -> List[Violation]:
    if isinstance(parameter, LParameter):
        return validate_l(network, parameter)
    return validate_s(network, parameter)


def require_valid(network: RegulatoryNetwork, parameter: Parameter) -> None:
    """Raise InvalidParameterError carrying the violations when any exist."""
    violations = validate(network, parameter)
    if violations:
        first = violations[0]
        raise InvalidParameterError(
            f"{len(violations)} violation(s), first: {first.kind} at {first.subject}: {first.detail}",
            witness=violations,
        )


# Discrete target maps


def discrete_map_s(network: RegulatoryNetwork, parameter: SParameter) -> Dict[State, State]:
    """D^S: every S state mapped to the domain containing its focal point."""
    grid = threshold_grid(network, parameter)
    rates = ProductionRates(network, parameter)
    table = {}
    for state in s_state_space(network):
        focal = rates.focal(state)
        table[state] = tuple(
            grid.level_of(node, value) for node, value in zip(network.nodes, focal)
        )
    return table


def l_target(
    network: RegulatoryNetwork, grid: ThresholdGrid, rates: ProductionRates, counts: State
) -> State:
    """
    Encoded L target level of the constant domain with the given counts.

    Raises:
        FocalPointInBridgeError: A focal coordinate lies inside a bridge interval
    """
    focal = rates.focal(counts)
    target = tuple(grid.level_of(node, value) for node, value in zip(network.nodes, focal))
    odd = [node for node, level in zip(network.nodes, target) if level % 2]
    if odd:
        raise FocalPointInBridgeError(
            f"focal point of constant domain {_format_state(tuple(2 * c for c in counts))} "
            f"lies inside a bridge interval of {', '.join(odd)}",
            witness=counts,
        )
    return target


def discrete_map_ln(network: RegulatoryNetwork, parameter: LParameter) -> Dict[State, State]:
    """D^L_N over constant domains, identified with S states by halving."""
    grid = threshold_grid(network, parameter)
    rates = ProductionRates(network, parameter)
    return {
        counts: tuple(level // 2 for level in l_target(network, grid, rates, counts))
        for counts in s_state_space(network)
    }


def class_signature(network: RegulatoryNetwork, parameter: Parameter) -> ClassSignature:
    if isinstance(parameter, LParameter):
        table = discrete_map_ln(network, parameter)
    else:
        table = discrete_map_s(network, parameter)
    return ClassSignature(threshold_order(network, parameter), table)


def classes_equivalent(first: ClassSignature, second: ClassSignature) -> bool:
    return first == second


# Canonical lift


def lift_margin(network: RegulatoryNetwork, parameter: SParameter) -> Fraction:
    """
    Smallest gap the lift must respect.

    Minimum over consecutive threshold gaps of each node (starting at 0)
    and over the distances between every focal coordinate and every
    threshold of the same node.
    """
    grid = threshold_grid(network, parameter)
    gaps = [
        upper - lower
        for node in network.nodes
        for lower, upper in zip(grid.points[node], grid.points[node][1:])
    ]
    rates = ProductionRates(network, parameter)
    for state in s_state_space(network):
        focal = rates.focal(state)
        for position, node in enumerate(network.nodes):
            gaps.extend(abs(focal[position] - theta) for theta in grid.points[node][1:])
    return min(gaps)


def canonical_lift(network: RegulatoryNetwork, parameter: SParameter) -> LParameter:
    """
    Ω: the L parameter with the same l, u and γ and bridges θ ∓ δ.

    Args:
        network: Regulatory network
        parameter: Valid regular S parameter

    Returns:
        LParameter with δ a quarter of :func:`lift_margin`

    Raises:
        InvalidParameterError: The S parameter is invalid or not regular
        SignatureMismatchError: The lift changed the class signature
    """
    require_valid(network, parameter)
    delta = lift_margin(network, parameter) / 4
    lifted = LParameter(
        gamma=dict(parameter.gamma),
        edges={
            edge: LEdgeParams(
                l=values.l,
                u=values.u,
                theta_minus=values.theta - delta,
                theta_plus=values.theta + delta,
            )
            for edge, values in parameter.edges.items()
        },
    )
    violations = validate_l(network, lifted)
    if violations:
        raise SignatureMismatchError(
            f"lifted parameter is not regular: {violations[0].detail}", witness=violations
        )
    if not classes_equivalent(class_signature(network, lifted), class_signature(network, parameter)):
        raise SignatureMismatchError("lifted parameter changed the class signature")
    logger.debug("Lifted S parameter with delta=%s", delta)
    return lifted


def as_l_parameter(network: RegulatoryNetwork, parameter: Parameter) -> LParameter:
    """Pass L parameters through; lift S parameters with Ω."""
    if isinstance(parameter, LParameter):
        return parameter
    return canonical_lift(network, parameter)


# Parameter files


def parameter_from_file(network: RegulatoryNetwork, document: ParameterFile) -> Parameter:
    """
    Key a parsed parameter file by the network's nodes and edges.

    Raises:
        ParameterMismatchError: Node or edge keys differ from the network
    """
    by_key = {edge.key: edge for edge in network.sorted_edges}
    problems = []
    problems += [f"missing gamma for '{n}'" for n in network.nodes if n not in document.gamma]
    problems += [f"gamma for unknown node '{n}'" for n in document.gamma if n not in network.index]
    problems += [f"missing edge '{k}'" for k in by_key if k not in document.edges]
    problems += [f"unknown edge '{k}'" for k in document.edges if k not in by_key]
    if problems:
        raise ParameterMismatchError("; ".join(problems), witness=problems)

    gamma = {node: document.gamma[node] for node in network.nodes}
    if document.model is Model.L:
        return LParameter(
            gamma=gamma,
            edges={
                edge: LEdgeParams(entry.l, entry.u, entry.theta_minus, entry.theta_plus)
                for edge, entry in ((e, document.edges[e.key]) for e in network.sorted_edges)
                if isinstance(entry, LEdgeEntry)
            },
        )
    return SParameter(
        gamma=gamma,
        edges={
            edge: SEdgeParams(entry.l, entry.u, entry.theta)
            for edge, entry in ((e, document.edges[e.key]) for e in network.sorted_edges)
            if isinstance(entry, SEdgeEntry)
        },
    )


def parameter_to_file(network: RegulatoryNetwork, parameter: Parameter) -> ParameterFile:
    edges: Dict[str, Union[SEdgeEntry, LEdgeEntry]] = {}
    for edge in network.sorted_edges:
        values = parameter.edges[edge]
        if isinstance(values, LEdgeParams):
            edges[edge.key] = LEdgeEntry(
                l=values.l, u=values.u, theta_minus=values.theta_minus, theta_plus=values.theta_plus
            )
        else:
            edges[edge.key] = SEdgeEntry(l=values.l, u=values.u, theta=values.theta)
    return ParameterFile(gamma={node: parameter.gamma[node] for node in network.nodes}, edges=edges)


def load_parameter(network: RegulatoryNetwork, path: Union[str, Path]) -> Parameter:
    """
    Read a parameter JSON file.

    Raises:
        InvalidParameterError: The file is not valid JSON or breaks the schema
        ParameterMismatchError: Keys differ from the network
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"{path}: not valid JSON: {exc.msg}") from exc
    try:
        document = ParameterFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InvalidParameterError(f"{path}: {location}: {first['msg']}") from exc
    return parameter_from_file(network, document)


def dump_parameter(network: RegulatoryNetwork, parameter: Parameter) -> str:
    """Parameter JSON text with node and edge keys in network order."""
    document = parameter_to_file(network, parameter)
    return json.dumps(document.model_dump(mode="json"), indent=2) + "\n"
