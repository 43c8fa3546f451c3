"""
Inequality service: exact evaluation of transcribed parameter inequality
systems and a randomized search for parameters satisfying them

A chain is a sequence of groups of expressions; every member of a group
must be strictly below every member of the next group. Symbols name edge
values target-first: ``l_x_y``, ``u_x_y`` and ``theta_x_y`` belong to the
edge ``y -> x``.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from morsebridge.config import Settings, get_settings
from morsebridge.core.exceptions import InvalidParameterError
from morsebridge.models.network import Edge, RegulatoryNetwork
from morsebridge.models.parameter import SEdgeParams, SParameter
from morsebridge.services.parameter_service import validate_s

logger = logging.getLogger(__name__)

Chain = Sequence[Sequence[str]]

# Candidate low values and the largest high value tried by the search
LOW_VALUES = (1, 2)
MAX_HIGH = 8


def symbol_names(edge: Edge) -> Tuple[str, str, str]:
    """Names of the (l, u, theta) symbols of an edge."""
    suffix = f"{edge.target}_{edge.source}"
    return f"l_{suffix}", f"u_{suffix}", f"theta_{suffix}"


def _symbols(network: RegulatoryNetwork) -> Dict[str, sympy.Symbol]:
    return {
        name: sympy.Symbol(name, positive=True)
        for edge in network.sorted_edges
        for name in symbol_names(edge)
    }


def parse_chain(network: RegulatoryNetwork, chain: Chain) -> List[List[sympy.Expr]]:
    """
    Parse a chain into sympy expressions.

    Raises:
        InvalidParameterError: An expression names a symbol the network lacks
    """
    table = _symbols(network)
    groups = []
    for group in chain:
        parsed = []
        for text in group:
            expr = sympy.sympify(text, locals=table)
            unknown = {str(s) for s in expr.free_symbols} - set(table)
            if unknown:
                raise InvalidParameterError(f"'{text}' uses unknown symbols {sorted(unknown)}")
            parsed.append(expr)
        groups.append(parsed)
    return groups


def substitution(network: RegulatoryNetwork, parameter: SParameter) -> Dict[sympy.Symbol, sympy.Rational]:
    table = _symbols(network)
    values = {}
    for edge in network.sorted_edges:
        l_name, u_name, theta_name = symbol_names(edge)
        edge_values = parameter.edges[edge]
        for name, value in ((l_name, edge_values.l), (u_name, edge_values.u), (theta_name, edge_values.theta)):
            values[table[name]] = sympy.Rational(value.numerator, value.denominator)
    return values


def chain_violations(
    network: RegulatoryNetwork, parameter: SParameter, chains: Sequence[Chain]
) -> List[str]:
    """Every failed pairwise comparison, rendered as ``lhs < rhs`` with values."""
    values = substitution(network, parameter)
    failures = []
    for chain in chains:
        groups = parse_chain(network, chain)
        for lower_group, upper_group in zip(groups, groups[1:]):
            for lower in lower_group:
                for upper in upper_group:
                    low, high = lower.subs(values), upper.subs(values)
                    if not bool(low < high):
                        failures.append(f"{lower} < {upper} fails ({low} >= {high})")
    return failures


def inequalities_hold(
    network: RegulatoryNetwork, parameter: SParameter, chains: Sequence[Chain]
) -> bool:
    return not chain_violations(network, parameter, chains)


def _is_threshold_group(group: Sequence[sympy.Expr]) -> bool:
    return all(isinstance(e, sympy.Symbol) and str(e).startswith("theta_") for e in group)


def _spread(lower: Fraction, upper: Fraction, count: int) -> List[Fraction]:
    """``count`` increasing values strictly inside (lower, upper), preferring halves."""
    halves = [
        Fraction(k, 2)
        for k in range(int(lower * 2) + 1, int(upper * 2) + 1)
        if lower < Fraction(k, 2) < upper
    ]
    if len(halves) >= count:
        step = len(halves) / (count + 1)
        return [halves[int(step * (i + 1))] for i in range(count)]
    width = (upper - lower) / (count + 1)
    return [lower + width * (i + 1) for i in range(count)]


def _place_thresholds(
    groups: List[List[sympy.Expr]], values: Dict[sympy.Symbol, sympy.Rational]
) -> Optional[Dict[sympy.Symbol, Fraction]]:
    """Assign the threshold runs of one chain, or None when the fixed groups clash."""
    numeric: List[Optional[List[Fraction]]] = []
    for group in groups:
        if _is_threshold_group(group):
            numeric.append(None)
        else:
            numeric.append([Fraction(str(expr.subs(values))) for expr in group])

    placed: Dict[sympy.Symbol, Fraction] = {}
    index = 0
    previous: Fraction = Fraction(0)
    while index < len(groups):
        fixed = numeric[index]
        if fixed is not None:
            if min(fixed) <= previous and index > 0:
                return None
            previous = max(fixed)
            index += 1
            continue
        run = []
        while index < len(groups) and numeric[index] is None:
            run.extend(groups[index])
            index += 1
        upper = min(numeric[index]) if index < len(groups) else previous + len(run) + 1
        if upper <= previous:
            return None
        for symbol, value in zip(run, _spread(previous, upper, len(run))):
            placed[symbol] = value
        previous = placed[run[-1]]
    return placed


def search_parameters(
    network: RegulatoryNetwork,
    chains: Sequence[Chain],
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
) -> SParameter:
    """
    Randomized search for a regular S parameter satisfying every chain.

    Low values are drawn from ``LOW_VALUES`` and high values from the
    integers up to ``MAX_HIGH``; thresholds are then spread between their
    neighbouring groups, on halves where possible. All decay rates are 1.

    Raises:
        InvalidParameterError: No parameter found within ``search_max_tries``
    """
    settings = settings or get_settings()
    rng = random.Random(settings.random_seed if seed is None else seed)
    table = _symbols(network)
    parsed = [parse_chain(network, chain) for chain in chains]
    gamma = {node: Fraction(1) for node in network.nodes}

    for attempt in range(1, settings.search_max_tries + 1):
        values: Dict[sympy.Symbol, sympy.Rational] = {}
        for edge in network.sorted_edges:
            l_name, u_name, _ = symbol_names(edge)
            low = rng.choice(LOW_VALUES)
            values[table[l_name]] = sympy.Integer(low)
            values[table[u_name]] = sympy.Integer(rng.randint(low + 1, MAX_HIGH))

        thresholds: Dict[sympy.Symbol, Fraction] = {}
        for groups in parsed:
            placed = _place_thresholds(groups, values)
            if placed is None:
                break
            thresholds.update(placed)
        else:
            edges = {}
            spare = Fraction(MAX_HIGH**3) + Fraction(1, 2)
            for edge in network.sorted_edges:
                l_name, u_name, theta_name = symbol_names(edge)
                theta = thresholds.get(table[theta_name])
                if theta is None:
                    theta, spare = spare, spare + 1
                edges[edge] = SEdgeParams(
                    l=Fraction(int(values[table[l_name]])),
                    u=Fraction(int(values[table[u_name]])),
                    theta=theta,
                )
            candidate = SParameter(gamma=dict(gamma), edges=edges)
            if not validate_s(network, candidate) and inequalities_hold(network, candidate, chains):
                logger.info("Found parameter after %d attempts", attempt)
                return candidate
    raise InvalidParameterError(
        f"no parameter satisfying the inequalities found in {settings.search_max_tries} attempts"
    )
