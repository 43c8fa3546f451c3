"""
State transition graph service

Builds the S graph from focal-point wall labels and the L graph from
corner-point wall labels, and provides the asynchronous-update oracle
built from a target table alone.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from morsebridge.core.exceptions import (
    BridgeInteriorError,
    InvalidParameterError,
    InvalidStateError,
    ZeroAtCornerError,
)
from morsebridge.models.graph import Transition, TransitionGraph
from morsebridge.models.network import RegulatoryNetwork
from morsebridge.models.parameter import LParameter, Parameter, SParameter, ThresholdGrid
from morsebridge.models.state import Cell, Model, Side, State, Wall, WallLabel
from morsebridge.services.parameter_service import (
    ProductionRates,
    model_of,
    threshold_grid,
)

logger = logging.getLogger(__name__)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def enumerate_states(
    network: RegulatoryNetwork, model: Model, parameter: Optional[Parameter] = None
) -> List[State]:
    """
    All states of a model in lexicographic order.

    S levels run over ``0..m_i``, L levels over ``0..2*m_i``.
    """
    scale = 2 if model is Model.L else 1
    return list(
        product(*(range(scale * network.out_degree(node) + 1) for node in network.nodes))
    )


@dataclass(frozen=True)
class SharedWall:
    """A face shared by two domains along ``index`` with both owner labels."""

    lower: State
    upper: State
    index: int
    lower_label: WallLabel
    upper_label: WallLabel


class PhaseSpace:
    """
    Domains, walls and labels of one parameter.

    Holds the threshold grid and a production-rate table so repeated
    label queries never re-evaluate a logic.
    """

    def __init__(self, network: RegulatoryNetwork, parameter: Parameter):
        self.network = network
        self.parameter = parameter
        self.model = model_of(parameter)
        self.grid: ThresholdGrid = threshold_grid(network, parameter)
        self.rates = ProductionRates(network, parameter)
        self.top_levels = tuple(self.grid.top_level(node) for node in network.nodes)

    # Points and rates

    def counts_at(self, point: Sequence[Fraction]) -> State:
        """
        Switch counts at a point given in coordinates.

        Raises:
            InvalidParameterError: An S coordinate sits on a threshold
            BridgeInteriorError: An L coordinate lies strictly inside a bridge
        """
        counts = []
        for node, value in zip(self.network.nodes, point):
            thresholds = self.grid.points[node][1:]
            if self.model is Model.S:
                if value in thresholds:
                    raise InvalidParameterError(
                        f"{node}={value} sits on a threshold where the switch is undefined"
                    )
                counts.append(sum(1 for theta in thresholds if theta < value))
            else:
                pairs = list(zip(thresholds[0::2], thresholds[1::2]))
                if any(lower < value < upper for lower, upper in pairs):
                    raise BridgeInteriorError(f"{node}={value} lies inside a bridge interval")
                counts.append(sum(1 for _, upper in pairs if upper <= value))
        return tuple(counts)

    def lambda_at(self, point: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if len(point) != self.network.dimension:
            raise InvalidStateError(f"point has {len(point)} coordinates, expected {self.network.dimension}")
        return self.rates.rates(self.counts_at(point))

    def _domain_counts(self, state: State) -> State:
        self.check_state(state)
        if self.model is Model.S:
            return state
        odd = [node for node, level in zip(self.network.nodes, state) if level % 2]
        if odd:
            raise InvalidStateError(
                f"state {state} is not a constant domain (bridge in {', '.join(odd)})"
            )
        return tuple(level // 2 for level in state)

    def check_state(self, state: State) -> None:
        if len(state) != self.network.dimension or any(
            level < 0 or level > top for level, top in zip(state, self.top_levels)
        ):
            raise InvalidStateError(f"state {state} is outside the {self.model.value.upper()} state space")

    def focal_point(self, state: State) -> Tuple[Fraction, ...]:
        """Γ⁻¹Λ on an S domain or an L constant domain."""
        return self.rates.focal(self._domain_counts(state))

    def target(self, state: State) -> State:
        """Encoded level of the domain interior that holds the focal point."""
        focal = self.focal_point(state)
        return tuple(self.grid.level_of(node, value) for node, value in zip(self.network.nodes, focal))

    def is_attracting(self, state: State) -> bool:
        """True when the domain contains its own focal point."""
        return self.target(state) == state

    # Corners and labels

    def corner_indices(self, face: Cell) -> List[Tuple[int, ...]]:
        return list(face.corner_indices())

    def corner_points(self, face: Cell) -> List[Tuple[Fraction, ...]]:
        """Corner points of a cell; half-infinite coordinates give their finite end only."""
        return [
            tuple(self.grid.points[node][p] for node, p in zip(self.network.nodes, corner))
            for corner in face.corner_indices()
        ]

    def sgn_corner(
        self, face: Cell, index: int, corners: Optional[Iterable[Tuple[int, ...]]] = None
    ) -> int:
        """
        Common sign of Λ_k/γ_k - φ_k over the corners of a face.

        Args:
            face: Cell of the L grid, degenerate at ``index``
            index: Projection coordinate k
            corners: Grid-index corners to use, in any order; the face's own by default

        Returns:
            +1 or -1 when all corners agree, 0 when they disagree

        Raises:
            ZeroAtCornerError: Λ_k/γ_k equals φ_k at a corner
        """
        if self.model is not Model.L:
            raise InvalidParameterError("corner signs are defined for L parameters only")
        if index not in face.degenerate:
            raise InvalidStateError(f"face is not degenerate in coordinate {index}")
        node = self.network.nodes[index]
        face_value = self.grid.points[node][face.bounds[index][0]]
        gamma = self.parameter.gamma[node]
        signs = set()
        for corner in face.corner_indices() if corners is None else corners:
            rate = self.rates.rates(tuple(p // 2 for p in corner))[index]
            sign = _sign(rate / gamma - face_value)
            if sign == 0:
                raise ZeroAtCornerError(
                    f"Λ_{node}/γ_{node} equals {face_value} at corner {corner}", witness=corner
                )
            signs.add(sign)
        return signs.pop() if len(signs) == 1 else 0

    def _face_sign(self, wall: Wall) -> int:
        if self.model is Model.S:
            node = self.network.nodes[wall.index]
            theta = self.grid.points[node][wall.face_point]
            sign = _sign(self.focal_point(wall.owner)[wall.index] - theta)
            if sign == 0:
                raise ZeroAtCornerError(f"focal point of {wall.owner} lies on {node}={theta}")
            return sign
        return self.sgn_corner(wall.face(self.top_levels), wall.index)

    def wall_label(self, wall: Wall) -> WallLabel:
        """sgn(τ, κ) times the focal sign (S) or the corner sign (L)."""
        self.check_state(wall.owner)
        if wall.face_point >= len(self.grid.points[self.network.nodes[wall.index]]):
            raise InvalidStateError(f"domain {wall.owner} has no right face in coordinate {wall.index}")
        return WallLabel(wall.side.sign * self._face_sign(wall))

    def walls(self) -> Iterator[SharedWall]:
        """Every face shared by two domains, once, lower domain first."""
        for state in enumerate_states(self.network, self.model):
            for index, top in enumerate(self.top_levels):
                if state[index] == top:
                    continue
                lower_wall = Wall(state, index, Side.RIGHT)
                upper = lower_wall.neighbor
                if self.model is Model.S:
                    lower_label = self.wall_label(lower_wall)
                    upper_label = self.wall_label(Wall(upper, index, Side.LEFT))
                else:
                    # both owners share one corner sign
                    sign = self.sgn_corner(lower_wall.face(self.top_levels), index)
                    lower_label, upper_label = WallLabel(-sign), WallLabel(sign)
                yield SharedWall(state, upper, index, lower_label, upper_label)

    # Graphs

    def has_self_loop(self, state: State) -> bool:
        if self.model is Model.L and any(level % 2 for level in state):
            return False
        return self.is_attracting(state)

    def transitions(self) -> Iterator[Transition]:
        for wall in self.walls():
            absorbing, entrance = WallLabel.ABSORBING, WallLabel.ENTRANCE
            bidirectional = WallLabel.BIDIRECTIONAL
            if wall.lower_label is absorbing and wall.upper_label is entrance:
                yield wall.lower, wall.upper
            elif wall.upper_label is absorbing and wall.lower_label is entrance:
                yield wall.upper, wall.lower
            elif wall.lower_label is bidirectional and wall.upper_label is bidirectional:
                yield wall.lower, wall.upper
                yield wall.upper, wall.lower
        for state in enumerate_states(self.network, self.model):
            if self.has_self_loop(state):
                yield state, state

    def build(self) -> TransitionGraph:
        graph = TransitionGraph.build(
            self.model,
            self.network.nodes,
            enumerate_states(self.network, self.model),
            self.transitions(),
        )
        logger.info(
            "Built %s state transition graph: %d states, %d edges",
            self.model.value.upper(),
            len(graph.states),
            len(graph.edges),
        )
        return graph


def lambda_at(
    network: RegulatoryNetwork, parameter: Parameter, point: Sequence[Fraction]
) -> Tuple[Fraction, ...]:
    """Λ at an S point off every threshold or at an L grid point outside every bridge."""
    return PhaseSpace(network, parameter).lambda_at(point)


def focal_point(network: RegulatoryNetwork, parameter: Parameter, state: State) -> Tuple[Fraction, ...]:
    return PhaseSpace(network, parameter).focal_point(state)


def is_attracting(network: RegulatoryNetwork, parameter: Parameter, state: State) -> bool:
    return PhaseSpace(network, parameter).is_attracting(state)


def corner_points(network: RegulatoryNetwork, parameter: LParameter, face: Cell) -> List[Tuple[Fraction, ...]]:
    return PhaseSpace(network, parameter).corner_points(face)


def sgn_corner(network: RegulatoryNetwork, parameter: LParameter, face: Cell, index: int) -> int:
    return PhaseSpace(network, parameter).sgn_corner(face, index)


def wall_label_s(network: RegulatoryNetwork, parameter: SParameter, wall: Wall) -> WallLabel:
    return PhaseSpace(network, parameter).wall_label(wall)


def wall_label_l(network: RegulatoryNetwork, parameter: LParameter, wall: Wall) -> WallLabel:
    return PhaseSpace(network, parameter).wall_label(wall)


def walls(network: RegulatoryNetwork, parameter: Parameter) -> List[SharedWall]:
    return list(PhaseSpace(network, parameter).walls())


def build_stg_s(network: RegulatoryNetwork, parameter: SParameter) -> TransitionGraph:
    if not isinstance(parameter, SParameter):
        raise InvalidParameterError("build_stg_s needs an S parameter")
    return PhaseSpace(network, parameter).build()


def build_stg_l(network: RegulatoryNetwork, parameter: LParameter) -> TransitionGraph:
    if not isinstance(parameter, LParameter):
        raise InvalidParameterError("build_stg_l needs an L parameter")
    return PhaseSpace(network, parameter).build()


def build_stg(network: RegulatoryNetwork, parameter: Parameter) -> TransitionGraph:
    return PhaseSpace(network, parameter).build()


def async_update_oracle(
    network: RegulatoryNetwork, target_table: Mapping[State, State]
) -> TransitionGraph:
    """
    Graph of the asynchronous update rule of a target table.

    A state equal to its target gets a self-loop; otherwise every
    coordinate that differs from the target takes one step towards it.
    """
    edges: List[Transition] = []
    for state, target in target_table.items():
        if state == target:
            edges.append((state, state))
            continue
        for index, (level, goal) in enumerate(zip(state, target)):
            if level != goal:
                moved = list(state)
                moved[index] += 1 if goal > level else -1
                edges.append((state, tuple(moved)))
    return TransitionGraph.build(Model.S, network.nodes, target_table.keys(), edges)


def nearest_neighbor_violations(graph: TransitionGraph) -> List[Transition]:
    """Edges that are neither self-loops nor single one-level steps."""
    bad = []
    for source, target in graph.edges:
        if source == target:
            continue
        steps = [abs(a - b) for a, b in zip(source, target) if a != b]
        if steps != [1]:
            bad.append((source, target))
    return bad


def odd_count(state: State) -> int:
    return sum(level % 2 for level in state)


def label_pairing_violations(shared: Iterable[SharedWall]) -> List[SharedWall]:
    """
    Shared faces whose two labels cannot coexist.

    Two absorbing owners never occur, and a bidirectional label is always
    matched by a bidirectional one.
    """
    bad = []
    for wall in shared:
        pair = (wall.lower_label, wall.upper_label)
        if pair == (WallLabel.ABSORBING, WallLabel.ABSORBING):
            bad.append(wall)
        elif (WallLabel.BIDIRECTIONAL in pair) and pair != (WallLabel.BIDIRECTIONAL,) * 2:
            bad.append(wall)
    return bad
