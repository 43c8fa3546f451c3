"""
Transition graphs and Morse graphs
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx

from morsebridge.models.network import NodeId
from morsebridge.models.state import Model, State

Transition = Tuple[State, State]


@dataclass(frozen=True)
class TransitionGraph:
    """
    State transition graph of one model.

    States and edges are kept sorted so every rendering is deterministic.
    Every edge is a self-loop or joins states differing by one encoded
    level in exactly one coordinate.
    """

    model: Model
    nodes: Tuple[NodeId, ...]
    states: Tuple[State, ...]
    edges: Tuple[Transition, ...]

    @classmethod
    def build(
        cls,
        model: Model,
        nodes: Iterable[NodeId],
        states: Iterable[State],
        edges: Iterable[Transition],
    ) -> "TransitionGraph":
        return cls(model, tuple(nodes), tuple(sorted(states)), tuple(sorted(set(edges))))

    @cached_property
    def edge_set(self) -> FrozenSet[Transition]:
        return frozenset(self.edges)

    @cached_property
    def _successors(self) -> Dict[State, Tuple[State, ...]]:
        found: Dict[State, list] = {state: [] for state in self.states}
        for source, target in self.edges:
            found[source].append(target)
        return {state: tuple(targets) for state, targets in found.items()}

    def successors(self, state: State) -> Tuple[State, ...]:
        """Targets of the out-edges of a state, sorted."""
        return self._successors[state]

    def has_edge(self, source: State, target: State) -> bool:
        return (source, target) in self.edge_set

    def self_loops(self) -> Tuple[State, ...]:
        return tuple(source for source, target in self.edges if source == target)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        graph.add_edges_from(self.edges)
        return graph

    def __len__(self) -> int:
        return len(self.states)


class MorseKind(str, Enum):
    FP = "FP"
    FC = "FC"
    XC = "XC"


@dataclass(frozen=True)
class MorseLabel:
    """FP / FC / XC label; ``varying`` lists the nodes an XC cycles in."""

    kind: MorseKind
    varying: Tuple[NodeId, ...] = ()

    def __str__(self) -> str:
        if self.kind is MorseKind.XC:
            return "XC{" + ",".join(self.varying) + "}"
        return self.kind.value


@dataclass(frozen=True)
class MorseSet:
    """Recurrent strongly connected component, states sorted."""

    index: int
    states: Tuple[State, ...]

    @cached_property
    def members(self) -> FrozenSet[State]:
        return frozenset(self.states)

    def __contains__(self, state: object) -> bool:
        return state in self.members

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class MorseGraph:
    """
    Hasse diagram of the reachability order on Morse sets.

    An edge ``(p, q)`` means Morse set ``p`` reaches ``q`` and nothing lies
    strictly between them. Attractors are the minimal elements, i.e. the
    nodes with no outgoing Hasse edge.
    """

    model: Model
    nodes: Tuple[NodeId, ...]
    morse_sets: Tuple[MorseSet, ...]
    labels: Tuple[MorseLabel, ...]
    edges: Tuple[Tuple[int, int], ...]
    order: FrozenSet[Tuple[int, int]] = field(default=frozenset())

    @cached_property
    def attractor_indices(self) -> Tuple[int, ...]:
        sources = {p for p, _ in self.edges}
        return tuple(ms.index for ms in self.morse_sets if ms.index not in sources)

    def is_attractor(self, index: int) -> bool:
        return index in self.attractor_indices

    def below(self, upper: int, lower: int) -> bool:
        """True when ``upper`` reaches ``lower`` by a nonempty chain (strict order)."""
        return (upper, lower) in self.order

    def find(self, state: State) -> int:
        """Index of the Morse set containing a state, or -1."""
        for ms in self.morse_sets:
            if state in ms:
                return ms.index
        return -1
