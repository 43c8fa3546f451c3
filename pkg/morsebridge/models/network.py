"""
Regulatory network model
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Tuple

from morsebridge.core.exceptions import (
    DuplicateEdgeError,
    DuplicateNodeError,
    NegativeSelfEdgeError,
    NoSourcesError,
    NoTargetsError,
    UnknownNodeError,
)

NodeId = str


class Sign(str, Enum):
    """Sign of a regulatory interaction."""

    ACTIVATION = "activation"
    REPRESSION = "repression"


@dataclass(frozen=True, order=True)
class Edge:
    """Signed, directed edge source -> target."""

    source: NodeId
    target: NodeId
    sign: Sign

    @property
    def key(self) -> str:
        """Edge key used in parameter files."""
        return f"{self.source}->{self.target}"

    def __str__(self) -> str:
        arrow = "->" if self.sign is Sign.ACTIVATION else "-|"
        return f"{self.source} {arrow} {self.target}"


@dataclass(frozen=True)
class Term:
    """One summand of a logic group."""

    source: NodeId
    sign: Sign

    def __str__(self) -> str:
        return self.source if self.sign is Sign.ACTIVATION else f"~{self.source}"


@dataclass(frozen=True)
class LogicSpec:
    """Product of sums with unit coefficients."""

    groups: Tuple[Tuple[Term, ...], ...]

    @property
    def terms(self) -> Tuple[Term, ...]:
        return tuple(term for group in self.groups for term in group)

    def __str__(self) -> str:
        return "".join("(" + " + ".join(str(t) for t in group) + ")" for group in self.groups)


@dataclass(frozen=True)
class RegulatoryNetwork:
    """
    Regulatory network with one product-of-sums logic per node.

    Node order fixes the coordinate index of every node in all state
    vectors downstream. The edge set is derived from the logics, so the
    two can never disagree.
    """

    nodes: Tuple[NodeId, ...]
    logics: Tuple[LogicSpec, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.logics):
            raise UnknownNodeError("every node needs exactly one logic")
        if len(set(self.nodes)) != len(self.nodes):
            raise DuplicateNodeError("node declared twice")
        declared = set(self.nodes)
        for target, logic in zip(self.nodes, self.logics):
            if not logic.groups or any(not group for group in logic.groups):
                raise NoSourcesError(f"node '{target}' has an empty logic")
            seen = set()
            for term in logic.terms:
                if term.source not in declared:
                    raise NoSourcesError(
                        f"node '{term.source}' regulates '{target}' but has no logic line"
                    )
                if term.source in seen:
                    raise DuplicateEdgeError(
                        f"'{term.source}' appears twice in the logic of '{target}'"
                    )
                if term.source == target and term.sign is Sign.REPRESSION:
                    raise NegativeSelfEdgeError(f"negative self-regulation '{target} -| {target}'")
                seen.add(term.source)
        for node in self.nodes:
            if not self.targets(node):
                raise NoTargetsError(f"node '{node}' regulates no other node")

    @cached_property
    def index(self) -> Dict[NodeId, int]:
        """Coordinate index of each node."""
        return {node: position for position, node in enumerate(self.nodes)}

    @cached_property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset(
            Edge(term.source, target, term.sign)
            for target, logic in zip(self.nodes, self.logics)
            for term in logic.terms
        )

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        """Edges ordered by (source index, target index)."""
        return tuple(
            sorted(self.edges, key=lambda e: (self.index[e.source], self.index[e.target]))
        )

    @cached_property
    def _targets(self) -> Dict[NodeId, Tuple[NodeId, ...]]:
        found: Dict[NodeId, list] = {node: [] for node in self.nodes}
        for edge in self.sorted_edges:
            found[edge.source].append(edge.target)
        return {node: tuple(targets) for node, targets in found.items()}

    def targets(self, node: NodeId) -> Tuple[NodeId, ...]:
        """T(i): targets of a node, in node order."""
        return self._targets[node]

    def sources(self, node: NodeId) -> Tuple[NodeId, ...]:
        """S(i): sources of a node, in node order."""
        logic = self.logic(node)
        return tuple(sorted((t.source for t in logic.terms), key=self.index.__getitem__))

    def logic(self, node: NodeId) -> LogicSpec:
        return self.logics[self.index[node]]

    def edge(self, source: NodeId, target: NodeId) -> Edge:
        for term in self.logic(target).terms:
            if term.source == source:
                return Edge(source, target, term.sign)
        raise UnknownNodeError(f"no edge {source}->{target}")

    def out_degree(self, node: NodeId) -> int:
        """m_i = |T(i)|, the number of thresholds of a node."""
        return len(self.targets(node))

    @property
    def dimension(self) -> int:
        return len(self.nodes)
