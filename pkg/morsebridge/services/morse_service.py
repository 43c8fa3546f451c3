"""
Morse service: recurrent components, Morse graphs and attractors
"""

import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from morsebridge.core.exceptions import UnreachedAttractorError
from morsebridge.models.graph import MorseGraph, MorseKind, MorseLabel, MorseSet, TransitionGraph
from morsebridge.models.network import NodeId, RegulatoryNetwork
from morsebridge.models.state import State

logger = logging.getLogger(__name__)


def _is_recurrent(graph: nx.DiGraph, component: Set[State]) -> bool:
    if len(component) > 1:
        return True
    (state,) = component
    return graph.has_edge(state, state)


def recurrent_components(graph: TransitionGraph) -> List[MorseSet]:
    """
    Strongly connected components carrying at least one edge.

    A singleton counts only when it has a self-loop. Output is ordered by
    each component's smallest state.
    """
    digraph = graph.to_networkx()
    components = [
        sorted(component)
        for component in nx.strongly_connected_components(digraph)
        if _is_recurrent(digraph, component)
    ]
    components.sort(key=lambda states: states[0])
    return [MorseSet(index, tuple(states)) for index, states in enumerate(components)]


def classify(morse_set: MorseSet, nodes: Union[RegulatoryNetwork, Sequence[NodeId]]) -> MorseLabel:
    """FP for a singleton, FC when every coordinate varies, XC otherwise."""
    names = nodes.nodes if isinstance(nodes, RegulatoryNetwork) else tuple(nodes)
    if len(morse_set) == 1:
        return MorseLabel(MorseKind.FP)
    varying = tuple(
        name
        for index, name in enumerate(names)
        if len({state[index] for state in morse_set.states}) > 1
    )
    if len(varying) == len(names):
        return MorseLabel(MorseKind.FC)
    return MorseLabel(MorseKind.XC, varying)


def morse_graph(graph: TransitionGraph) -> MorseGraph:
    """
    Hasse diagram of the reachability order on recurrent components.

    Reachability is read off the condensation DAG; the Hasse edges are
    its transitive reduction restricted to Morse sets.
    """
    digraph = graph.to_networkx()
    morse_sets = recurrent_components(graph)
    condensed = nx.condensation(digraph)
    mapping: Dict[State, int] = condensed.graph["mapping"]
    morse_of: Dict[int, int] = {mapping[ms.states[0]]: ms.index for ms in morse_sets}

    order = set()
    for ms in morse_sets:
        for reached in nx.descendants(condensed, mapping[ms.states[0]]):
            if reached in morse_of:
                order.add((ms.index, morse_of[reached]))

    poset = nx.DiGraph()
    poset.add_nodes_from(ms.index for ms in morse_sets)
    poset.add_edges_from(order)
    hasse = nx.transitive_reduction(poset)

    result = MorseGraph(
        model=graph.model,
        nodes=graph.nodes,
        morse_sets=tuple(morse_sets),
        labels=tuple(classify(ms, graph.nodes) for ms in morse_sets),
        edges=tuple(sorted(hasse.edges())),
        order=frozenset(order),
    )
    logger.info(
        "Computed %s Morse graph: %d Morse sets, %d Hasse edges, %d attractors",
        graph.model.value.upper(),
        len(result.morse_sets),
        len(result.edges),
        len(result.attractor_indices),
    )
    return result


def attractors(mg: MorseGraph, graph: Optional[TransitionGraph] = None) -> List[MorseSet]:
    """
    Minimal Morse sets.

    When the transition graph is given, also checks that every state
    reaches at least one attractor.

    Raises:
        UnreachedAttractorError: Some state reaches no attractor
    """
    found = [mg.morse_sets[index] for index in mg.attractor_indices]
    if graph is not None:
        stranded = states_missing_attractors(graph, found)
        if stranded:
            raise UnreachedAttractorError(
                f"{len(stranded)} states reach no attractor, first {stranded[0]}",
                witness=stranded,
            )
    return found


def states_missing_attractors(graph: TransitionGraph, found: Sequence[MorseSet]) -> List[State]:
    """States whose forward closure meets no attractor."""
    digraph = graph.to_networkx()
    members = set().union(*(ms.members for ms in found)) if found else set()
    reverse = digraph.reverse(copy=False)
    covered = set(members)
    for state in members:
        covered |= nx.descendants(reverse, state)
    return [state for state in graph.states if state not in covered]


def escaping_edges(graph: TransitionGraph, morse_set: MorseSet) -> List[Tuple[State, State]]:
    """Edges leaving a Morse set; empty for every attractor."""
    return [
        (state, target)
        for state in morse_set.states
        for target in graph.successors(state)
        if target not in morse_set
    ]
