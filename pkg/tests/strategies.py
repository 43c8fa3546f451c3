"""
Hypothesis strategies for small regular networks and S parameters

Thresholds are multiples of 1/5 off the integers, while every focal
coordinate is a ratio of integers with a decay rate in 1..4, so the two
never coincide and every drawn parameter is regular.
"""

from fractions import Fraction
from typing import Tuple

from hypothesis.strategies import booleans, composite, integers, lists, sampled_from

from morsebridge.models.network import RegulatoryNetwork
from morsebridge.models.parameter import SEdgeParams, SParameter
from morsebridge.services.network_service import parse_network

NAMES = ("x", "y", "z")


@composite
def networks(draw, max_nodes: int = 3) -> RegulatoryNetwork:
    """Ring networks with optional self-activation and, on three nodes, optional back edges."""
    count = draw(integers(2, max_nodes))
    names = NAMES[:count]
    lines = []
    for position, name in enumerate(names):
        ring = names[position - 1]
        terms = [ring if draw(booleans()) else f"~{ring}"]
        if count == 3 and draw(booleans()):
            back = names[(position + 1) % count]
            terms.append(back if draw(booleans()) else f"~{back}")
        if draw(booleans()):
            terms.append(name)
        layout = draw(sampled_from(["sum", "product"]))
        if layout == "sum":
            logic = "(" + " + ".join(terms) + ")"
        else:
            logic = "".join(f"({term})" for term in terms)
        lines.append(f"{name} : {logic}")
    return parse_network("\n".join(lines))


@composite
def s_parameters(draw, network: RegulatoryNetwork) -> SParameter:
    gamma = {node: Fraction(draw(integers(1, 4))) for node in network.nodes}
    edges = {}
    for node in network.nodes:
        targets = network.targets(node)
        numerators = draw(
            lists(
                integers(1, 80).filter(lambda k: k % 5 != 0),
                min_size=len(targets),
                max_size=len(targets),
                unique=True,
            )
        )
        for target, numerator in zip(targets, numerators):
            low = draw(integers(1, 4))
            high = draw(integers(low + 1, 8))
            edges[network.edge(node, target)] = SEdgeParams(
                l=Fraction(low), u=Fraction(high), theta=Fraction(numerator, 5)
            )
    return SParameter(gamma=gamma, edges=edges)


@composite
def regular_systems(draw, max_nodes: int = 3) -> Tuple[RegulatoryNetwork, SParameter]:
    network = draw(networks(max_nodes))
    return network, draw(s_parameters(network))
