"""
Correspondence service: the state embedding Ψ, path lifting and descent,
the two Morse-set maps φ and the report comparing S and L dynamics at
Ω-corresponding parameters
"""

import logging
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import chain
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from morsebridge.config import Settings, get_settings
from morsebridge.core.exceptions import (
    CheckError,
    DescentFailureError,
    LiftFailureError,
    MultipleTerminalError,
    OddComponentError,
    SplitImageError,
    UnreachedAttractorError,
)
from morsebridge.models.graph import MorseGraph, MorseSet, TransitionGraph
from morsebridge.models.network import RegulatoryNetwork
from morsebridge.models.parameter import SParameter
from morsebridge.models.state import State
from morsebridge.schemas.report import CheckResult, CorrespondenceReport, MorseMapEntry
from morsebridge.services.export_service import morse_graph_out
from morsebridge.services.morse_service import attractors, morse_graph
from morsebridge.services.parameter_service import (
    canonical_lift,
    discrete_map_s,
    lift_margin,
)
from morsebridge.services.stg_service import (
    async_update_oracle,
    build_stg_l,
    build_stg_s,
    odd_count,
)

logger = logging.getLogger(__name__)


# State embedding


def psi(state: State) -> State:
    """Ψ: S state to the L constant domain with doubled levels."""
    return tuple(2 * level for level in state)


def psi_inverse(state: State) -> State:
    odd = [index for index, level in enumerate(state) if level % 2]
    if odd:
        raise OddComponentError(f"state {state} has odd components at {odd}", witness=state)
    return tuple(level // 2 for level in state)


def bridge_between(source: State, target: State) -> State:
    """The L bridge state separating Ψ(source) and Ψ(target) for adjacent S states."""
    return tuple(a + b for a, b in zip(source, target))


# Paths


def reachable_set(graph: TransitionGraph, sources: Iterable[State]) -> frozenset:
    """Forward closure of a set of states, sources included."""
    seen = set(sources)
    queue = deque(sorted(seen))
    while queue:
        state = queue.popleft()
        for target in graph.successors(state):
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return frozenset(seen)


def find_path(
    graph: TransitionGraph, source: State, target: State, strict: bool = False
) -> Optional[List[State]]:
    """
    Shortest path by breadth-first search over sorted successors.

    Returns:
        States of the path from source to target, or None. Without
        ``strict`` a state reaches itself by the empty path ``[source]``;
        with it a nonempty path is required.
    """
    if source == target and not strict:
        return [source]
    parents: Dict[State, Optional[State]] = {}
    queue = deque()
    for nxt in graph.successors(source):
        if nxt not in parents:
            parents[nxt] = None
            queue.append(nxt)
    while queue:
        state = queue.popleft()
        if state == target:
            path = [state]
            step = parents[state]
            while step is not None:
                path.append(step)
                step = parents[step]
            path.append(source)
            return path[::-1]
        for nxt in graph.successors(state):
            if nxt not in parents:
                parents[nxt] = state
                queue.append(nxt)
    return None


def has_path(graph: TransitionGraph, source: State, target: State) -> bool:
    return find_path(graph, source, target) is not None


def strict_has_path(graph: TransitionGraph, source: State, target: State) -> bool:
    return find_path(graph, source, target, strict=True) is not None


def lift_path(path: Sequence[State], stg_l: TransitionGraph) -> List[State]:
    """
    Lift an S path to the L path through the bridge states between its steps.

    An S path of length k becomes an L path of length 2k; a self-loop
    step lifts to two self-loop steps at the doubled state.

    Raises:
        LiftFailureError: A lifted step is not an L edge
    """
    if not path:
        return []
    lifted = [psi(path[0])]
    for source, target in zip(path, path[1:]):
        middle = psi(source) if source == target else bridge_between(source, target)
        for step in ((lifted[-1], middle), (middle, psi(target))):
            if not stg_l.has_edge(*step):
                raise LiftFailureError(
                    f"S step {source}->{target} lifts through missing L edge {step[0]}->{step[1]}",
                    witness=[list(source), list(target)],
                )
        lifted.extend((middle, psi(target)))
    return lifted


def descend_to_constant(state: State, stg_l: TransitionGraph) -> List[State]:
    """
    Walk from an L state to a constant domain, one bridge coordinate per step.

    Returns:
        The states visited after ``state``; empty for a constant domain

    Raises:
        DescentFailureError: No successor lowers the bridge count by one
    """
    steps: List[State] = []
    current = state
    while odd_count(current):
        wanted = odd_count(current) - 1
        nxt = next((t for t in stg_l.successors(current) if odd_count(t) == wanted), None)
        if nxt is None:
            raise DescentFailureError(
                f"no edge out of {current} reduces its bridge count", witness=list(current)
            )
        steps.append(nxt)
        current = nxt
    return steps


# Morse-set maps


def phi_morse(md_s: MorseGraph, md_l: MorseGraph) -> Dict[int, int]:
    """
    Each S Morse set mapped to the L Morse set holding all of its Ψ-image.

    Raises:
        SplitImageError: The image meets two L Morse sets or a non-recurrent state
    """
    mapping = {}
    for ms in md_s.morse_sets:
        images = {md_l.find(psi(state)) for state in ms.states}
        if len(images) != 1 or -1 in images:
            raise SplitImageError(
                f"Ψ-image of S Morse set {ms.index} is not inside one L Morse set",
                witness={"morse_set": ms.index, "l_morse_sets": sorted(images)},
            )
        mapping[ms.index] = images.pop()
    return mapping


def phi_attr(
    attractors_s: Sequence[MorseSet], stg_l: TransitionGraph, md_l: MorseGraph
) -> Dict[int, int]:
    """
    Each S attractor mapped to the L attractor inside the forward closure of its Ψ-image.

    Raises:
        MultipleTerminalError: The closure holds more or fewer than one L attractor
    """
    l_attractors = [md_l.morse_sets[index] for index in md_l.attractor_indices]
    mapping = {}
    for attractor in attractors_s:
        closure = reachable_set(stg_l, (psi(state) for state in attractor.states))
        inside = [a.index for a in l_attractors if a.states[0] in closure]
        if len(inside) != 1:
            raise MultipleTerminalError(
                f"forward closure of S attractor {attractor.index} holds {len(inside)} L attractors",
                witness={"attractor": attractor.index, "l_attractors": inside},
            )
        mapping[attractor.index] = inside[0]
    return mapping


# Report


@dataclass
class Correspondence:
    """Graphs and Morse graphs of an S parameter and its lift."""

    network: RegulatoryNetwork
    parameter: SParameter
    stg_s: TransitionGraph
    stg_l: TransitionGraph
    md_s: MorseGraph
    md_l: MorseGraph

    @classmethod
    def build(cls, network: RegulatoryNetwork, parameter: SParameter) -> "Correspondence":
        lifted = canonical_lift(network, parameter)
        stg_s = build_stg_s(network, parameter)
        stg_l = build_stg_l(network, lifted)
        return cls(network, parameter, stg_s, stg_l, morse_graph(stg_s), morse_graph(stg_l))


def _adjacent_pairs(states: Iterable[State], top: Sequence[int]) -> Iterator[Tuple[State, State]]:
    for state in states:
        for index, level in enumerate(state):
            for step in (-1, 1):
                if 0 <= level + step <= top[index]:
                    moved = list(state)
                    moved[index] += step
                    yield state, tuple(moved)


def _paths_up_to(graph: TransitionGraph, length: int) -> Iterator[List[State]]:
    """All paths of 1..length non-loop edges, from every state."""
    stack = [[state] for state in reversed(graph.states)]
    while stack:
        path = stack.pop()
        if len(path) > 1:
            yield path
        if len(path) <= length:
            for target in reversed(graph.successors(path[-1])):
                if target != path[-1]:
                    stack.append(path + [target])


def _random_paths(graph: TransitionGraph, count: int, length: int, seed: int) -> Iterator[List[State]]:
    rng = random.Random(seed)
    for _ in range(count):
        path = [rng.choice(graph.states)]
        for _ in range(length):
            moves = [t for t in graph.successors(path[-1]) if t != path[-1]]
            if not moves:
                break
            path.append(rng.choice(moves))
        if len(path) > 1:
            yield path


def fixed_points(md: MorseGraph) -> List[State]:
    return sorted(ms.states[0] for ms in md.morse_sets if len(ms) == 1)


def _map_entries(mapping: Dict[int, int], md_s: MorseGraph, md_l: MorseGraph) -> List[MorseMapEntry]:
    return [
        MorseMapEntry(
            source_index=source,
            source_label=str(md_s.labels[source]),
            target_index=target,
            target_label=str(md_l.labels[target]),
        )
        for source, target in sorted(mapping.items())
    ]


def _safe(build: Callable[[], Dict[int, int]]) -> Dict[int, int]:
    try:
        return build()
    except CheckError:
        return {}


def verify_correspondence(
    network: RegulatoryNetwork, parameter: SParameter, settings: Optional[Settings] = None
) -> CorrespondenceReport:
    """Lift an S parameter, build both dynamics and run every correspondence check."""
    return correspondence_report(Correspondence.build(network, parameter), settings)


class CorrespondenceService:
    """
    Correspondence checks over the built dynamics of one S parameter.

    Each check returns a :class:`CheckResult` and never raises for a
    failed property.
    """

    def __init__(self, correspondence: Correspondence, settings: Optional[Settings] = None):
        self.c = correspondence
        self.settings = settings or get_settings()

    def check_async_oracle(self) -> CheckResult:
        c = self.c
        oracle = async_update_oracle(c.network, discrete_map_s(c.network, c.parameter))
        missing = sorted(oracle.edge_set - c.stg_s.edge_set)
        extra = sorted(c.stg_s.edge_set - oracle.edge_set)
        if missing or extra:
            return CheckResult(
                name="async_update_equivalence",
                passed=False,
                detail=f"{len(missing)} oracle edges missing, {len(extra)} extra edges",
                witness={"missing": missing[:5], "extra": extra[:5]},
            )
        return CheckResult(name="async_update_equivalence", passed=True)

    def check_edge_lifting(self) -> CheckResult:
        c = self.c
        top = tuple(c.network.out_degree(node) for node in c.network.nodes)
        for source, target in _adjacent_pairs(c.stg_s.states, top):
            middle = bridge_between(source, target)
            lifted = c.stg_l.has_edge(psi(source), middle) and c.stg_l.has_edge(middle, psi(target))
            if lifted != c.stg_s.has_edge(source, target):
                return CheckResult(
                    name="edge_lifting",
                    passed=False,
                    detail=f"S edge {source}->{target} is {'absent' if lifted else 'present'} "
                    f"but its lifted 2-path is {'present' if lifted else 'absent'}",
                    witness=[source, target],
                )
        return CheckResult(name="edge_lifting", passed=True)

    def check_path_lifting(self) -> CheckResult:
        c = self.c
        settings = self.settings
        paths = 0
        sampled = _random_paths(
            c.stg_s,
            settings.lift_random_paths,
            settings.lift_random_path_length,
            settings.random_seed,
        )
        for path in chain(_paths_up_to(c.stg_s, settings.lift_path_max_length), sampled):
            try:
                lifted = lift_path(path, c.stg_l)
            except LiftFailureError as exc:
                return CheckResult(name="path_lifting", passed=False, detail=exc.detail, witness=path)
            if len(lifted) != 2 * len(path) - 1:
                return CheckResult(name="path_lifting", passed=False, detail="lifted length", witness=path)
            paths += 1
        return CheckResult(name="path_lifting", passed=True, detail=f"{paths} paths lifted")

    def check_descent(self) -> CheckResult:
        c = self.c
        for state in c.stg_l.states:
            count = odd_count(state)
            if not count:
                continue
            try:
                steps = descend_to_constant(state, c.stg_l)
            except DescentFailureError as exc:
                return CheckResult(name="descent", passed=False, detail=exc.detail, witness=state)
            if len(steps) != count:
                return CheckResult(name="descent", passed=False, detail="descent length", witness=state)
        return CheckResult(name="descent", passed=True)

    def check_order_preserving(self) -> CheckResult:
        c = self.c
        try:
            mapping = phi_morse(c.md_s, c.md_l)
        except SplitImageError as exc:
            return CheckResult(name="order_preserving", passed=False, detail=exc.detail, witness=exc.witness)
        for upper, lower in sorted(c.md_s.order):
            image_upper, image_lower = mapping[upper], mapping[lower]
            if image_upper != image_lower and not c.md_l.below(image_upper, image_lower):
                return CheckResult(
                    name="order_preserving",
                    passed=False,
                    detail=f"S Morse sets {upper} above {lower} map to incomparable L Morse sets",
                    witness=[upper, lower],
                )
        return CheckResult(name="order_preserving", passed=True)

    def check_attractor_surjection(self) -> CheckResult:
        c = self.c
        try:
            attractors(c.md_l, c.stg_l)
            mapping = phi_attr(attractors(c.md_s, c.stg_s), c.stg_l, c.md_l)
        except UnreachedAttractorError as exc:
            return CheckResult(
                name="attractor_surjection", passed=False, detail=exc.detail, witness=exc.witness
            )
        except MultipleTerminalError as exc:
            logger.warning("Multiple terminal attractors: %s", exc.detail)
            return CheckResult(
                name="attractor_surjection", passed=False, detail=exc.detail, witness=exc.witness
            )
        missed = sorted(set(c.md_l.attractor_indices) - set(mapping.values()))
        if missed:
            return CheckResult(
                name="attractor_surjection",
                passed=False,
                detail="L attractors outside the image",
                witness=missed,
            )
        return CheckResult(name="attractor_surjection", passed=True)

    def check_fixed_point_bijection(self) -> CheckResult:
        c = self.c
        image = sorted(psi(state) for state in fixed_points(c.md_s))
        fixed_l = fixed_points(c.md_l)
        if image != fixed_l:
            return CheckResult(
                name="fixed_point_bijection",
                passed=False,
                detail=f"{len(image)} S fixed points, {len(fixed_l)} L fixed points",
                witness={"psi_image": image, "l_fixed_points": fixed_l},
            )
        return CheckResult(name="fixed_point_bijection", passed=True)

    def checks(self) -> List[Callable[[], CheckResult]]:
        """Every check, in report order."""
        return [
            self.check_async_oracle,
            self.check_edge_lifting,
            self.check_path_lifting,
            self.check_descent,
            self.check_order_preserving,
            self.check_attractor_surjection,
            self.check_fixed_point_bijection,
        ]

    def report(self) -> CorrespondenceReport:
        """
        Run every check.

        Checks are independent; with ``max_workers > 1`` they run on a thread
        pool, and the report lists them in the same fixed order either way.
        """
        c = self.c
        if self.settings.parallel:
            with ThreadPoolExecutor(max_workers=self.settings.max_workers) as pool:
                results = list(pool.map(lambda check: check(), self.checks()))
        else:
            results = [check() for check in self.checks()]

        for result in results:
            if result.passed:
                logger.info("Check %s passed", result.name)
            else:
                logger.warning("Check %s failed: %s", result.name, result.detail)

        morse_map = _safe(lambda: phi_morse(c.md_s, c.md_l))
        attr_map = _safe(lambda: phi_attr(attractors(c.md_s), c.stg_l, c.md_l))
        return CorrespondenceReport(
            nodes=list(c.network.nodes),
            delta=str(lift_margin(c.network, c.parameter) / 4),
            s_states=len(c.stg_s),
            l_states=len(c.stg_l),
            s_morse_graph=morse_graph_out(c.md_s),
            l_morse_graph=morse_graph_out(c.md_l),
            phi_morse=_map_entries(morse_map, c.md_s, c.md_l),
            phi_attr=_map_entries(attr_map, c.md_s, c.md_l),
            phi_morse_surjective=bool(morse_map)
            and set(morse_map.values()) == {ms.index for ms in c.md_l.morse_sets},
            phi_morse_injective=len(set(morse_map.values())) == len(morse_map),
            phi_attr_injective=len(set(attr_map.values())) == len(attr_map),
            checks=results,
            passed=all(result.passed for result in results),
        )


def correspondence_report(
    c: Correspondence, settings: Optional[Settings] = None
) -> CorrespondenceReport:
    """Run every correspondence check on built dynamics."""
    return CorrespondenceService(c, settings).report()
