"""
S- and L-parameter models

All numbers are exact rationals (``fractions.Fraction``).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from morsebridge.models.network import Edge, NodeId
from morsebridge.models.state import Model, State


@dataclass(frozen=True)
class SEdgeParams:
    """Per-edge S values: low, high, threshold."""

    l: Fraction
    u: Fraction
    theta: Fraction


@dataclass(frozen=True)
class LEdgeParams:
    """Per-edge L values: low, high and the bridge interval."""

    l: Fraction
    u: Fraction
    theta_minus: Fraction
    theta_plus: Fraction


@dataclass(frozen=True)
class SParameter:
    gamma: Mapping[NodeId, Fraction]
    edges: Mapping[Edge, SEdgeParams]

    model = Model.S

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.gamma.items())), tuple(sorted(self.edges.items()))))


@dataclass(frozen=True)
class LParameter:
    gamma: Mapping[NodeId, Fraction]
    edges: Mapping[Edge, LEdgeParams]

    model = Model.L

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.gamma.items())), tuple(sorted(self.edges.items()))))


Parameter = Union[SParameter, LParameter]


@dataclass(frozen=True)
class ThresholdOrder:
    """
    Per-node total order of targets by ascending threshold.

    ``orders[i]`` lists the targets of node ``i``; the rank of a target is
    its 1-based position.
    """

    orders: Mapping[NodeId, Tuple[NodeId, ...]]

    def rank(self, source: NodeId, target: NodeId) -> int:
        return self.orders[source].index(target) + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThresholdOrder):
            return NotImplemented
        return dict(self.orders) == dict(other.orders)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.orders.items())))


@dataclass(frozen=True)
class ThresholdGrid:
    """
    Switching grid of one parameter.

    ``points[i]`` holds the finite grid values of node ``i`` in ascending
    order, starting with 0. S grids are ``0, θ_1 .. θ_m``; L grids are
    ``0, ϑ⁻_1, ϑ⁺_1, .., ϑ⁻_m, ϑ⁺_m``. Encoded level ``e`` is the interval
    ``[points[e], points[e + 1]]`` with ``+∞`` past the last point.
    """

    model: Model
    order: ThresholdOrder
    points: Mapping[NodeId, Tuple[Fraction, ...]]

    def lower(self, node: NodeId, level: int) -> Fraction:
        return self.points[node][level]

    def upper(self, node: NodeId, level: int) -> Optional[Fraction]:
        values = self.points[node]
        return values[level + 1] if level + 1 < len(values) else None

    def top_level(self, node: NodeId) -> int:
        return len(self.points[node]) - 1

    def level_of(self, node: NodeId, value: Fraction) -> int:
        """Encoded level whose interval interior contains ``value``."""
        return sum(1 for point in self.points[node][1:] if point < value)


@dataclass(frozen=True)
class ClassSignature:
    """
    Equivalence-class signature (O, D) of a regular parameter.

    ``target_table`` maps every S state (equivalently every constant L
    domain, identified by halving) to its target S state.
    """

    order: ThresholdOrder
    target_table: Dict[State, State]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassSignature):
            return NotImplemented
        return self.order == other.order and self.target_table == other.target_table

    def __hash__(self) -> int:
        return hash((self.order, tuple(sorted(self.target_table.items()))))


@dataclass(frozen=True)
class Violation:
    """
    One failed parameter constraint.

    ``kind`` is ``missing`` or ``extra`` for structural problems and one of
    ``positivity``, ``ordering``, ``distinct-thresholds``,
    ``disjoint-intervals`` or ``regularity`` for numeric ones.
    """

    kind: str
    subject: str
    detail: str

    STRUCTURAL = ("missing", "extra")

    @property
    def structural(self) -> bool:
        return self.kind in self.STRUCTURAL
