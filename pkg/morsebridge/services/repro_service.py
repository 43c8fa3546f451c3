"""
Repro service: the shipped example networks, their parameters and
inequality systems, and the claim checks run on each of them
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from morsebridge.config import Settings, get_settings
from morsebridge.core.exceptions import UnknownExampleError
from morsebridge.models.graph import TransitionGraph
from morsebridge.models.network import RegulatoryNetwork
from morsebridge.models.parameter import LEdgeParams, LParameter, SEdgeParams, SParameter
from morsebridge.models.state import State
from morsebridge.schemas.report import ClaimReport, ClaimResult
from morsebridge.services.correspondence_service import (
    Correspondence,
    correspondence_report,
    fixed_points,
    phi_attr,
    phi_morse,
    psi,
    reachable_set,
)
from morsebridge.services.inequality_service import Chain, chain_violations
from morsebridge.services.morse_service import attractors
from morsebridge.services.network_service import parse_network, print_network
from morsebridge.services.parameter_service import canonical_lift, dump_parameter

logger = logging.getLogger(__name__)

Claim = Callable[[Correspondence], ClaimResult]
EdgeValues = Mapping[str, Tuple[Union[int, str], Union[int, str], Union[int, str]]]


@dataclass(frozen=True)
class ExampleSpec:
    """A shipped example: network, S parameter, inequality chains and claims."""

    name: str
    network: RegulatoryNetwork
    parameter: SParameter
    inequalities: Tuple[Chain, ...]
    claims: Tuple[Claim, ...]

    @property
    def stem(self) -> str:
        """File stem used under ``fixtures/``."""
        return self.name.lower()


def s_parameter(network: RegulatoryNetwork, values: EdgeValues) -> SParameter:
    """
    Build an S parameter with all decay rates 1.

    Args:
        network: Network the parameter belongs to
        values: ``(l, u, theta)`` per edge key ``src->tgt``; strings such as
            ``"21/2"`` are read as exact rationals
    """
    by_key = {edge.key: edge for edge in network.sorted_edges}
    return SParameter(
        gamma={node: Fraction(1) for node in network.nodes},
        edges={
            by_key[key]: SEdgeParams(*(Fraction(str(v)) for v in triple))
            for key, triple in values.items()
        },
    )


# Escape searches


def escape_pairs(
    stg_s: TransitionGraph, stg_l: TransitionGraph, exclude: Sequence[State] = ()
) -> List[Tuple[State, State]]:
    """
    Ordered pairs of distinct S states with no S path but an L path between their Ψ-images.

    States in ``exclude`` take part in no pair.
    """
    skipped = set(exclude)
    pairs = []
    for source in stg_s.states:
        if source in skipped:
            continue
        s_reach = reachable_set(stg_s, [source])
        l_reach = reachable_set(stg_l, [psi(source)])
        pairs.extend(
            (source, target)
            for target in stg_s.states
            if target != source
            and target not in skipped
            and target not in s_reach
            and psi(target) in l_reach
        )
    return pairs


# Claims


def _claim(name: str, description: str, passed: bool, detail: str = "", witness=None) -> ClaimResult:
    return ClaimResult(
        name=name, description=description, passed=passed, detail=detail, witness=witness
    )


def _state_counts(s_states: int, l_states: int) -> Claim:
    def check(c: Correspondence) -> ClaimResult:
        found = (len(c.stg_s), len(c.stg_l))
        return _claim(
            "state_counts",
            f"{s_states} S states and {l_states} L states",
            found == (s_states, l_states),
            detail=f"found {found[0]} S and {found[1]} L states",
        )

    return check


TOGGLE_S_EDGES = (
    ((0, 0), (0, 1)),
    ((0, 0), (1, 0)),
    ((0, 1), (0, 1)),
    ((1, 0), (1, 0)),
    ((1, 1), (0, 1)),
    ((1, 1), (1, 0)),
)
TOGGLE_L_CYCLE = ((0, 1), (1, 0), (1, 1), (1, 2), (2, 1))


def _toggle_s_stg(c: Correspondence) -> ClaimResult:
    return _claim(
        "s_stg",
        "S graph has 4 states, fixed points at (1,0) and (0,1) and edges out of (0,0) and (1,1)",
        len(c.stg_s) == 4 and c.stg_s.edges == TOGGLE_S_EDGES,
        witness=[list(map(list, edge)) for edge in c.stg_s.edges],
    )


def _toggle_l_stg(c: Correspondence) -> ClaimResult:
    cycle = c.md_l.find(TOGGLE_L_CYCLE[0])
    strongly_connected = cycle >= 0 and c.md_l.morse_sets[cycle].states == TOGGLE_L_CYCLE
    return _claim(
        "l_stg",
        "L graph has 9 states, self-loops only at (2,0) and (0,2), non-corner states strongly connected",
        len(c.stg_l) == 9
        and c.stg_l.self_loops() == ((0, 2), (2, 0))
        and strongly_connected,
        witness={"self_loops": [list(s) for s in c.stg_l.self_loops()]},
    )


def _toggle_morse_graphs(c: Correspondence) -> ClaimResult:
    s_labels = sorted(str(label) for label in c.md_s.labels)
    l_labels = sorted(str(label) for label in c.md_l.labels)
    s_ok = s_labels == ["FP", "FP"] and not c.md_s.edges
    fc = [ms.index for ms, label in zip(c.md_l.morse_sets, c.md_l.labels) if str(label) == "FC"]
    l_ok = (
        l_labels == ["FC", "FP", "FP"]
        and len(fc) == 1
        and sorted(lower for upper, lower in c.md_l.edges if upper == fc[0])
        == sorted(c.md_l.attractor_indices)
        and len(c.md_l.edges) == 2
        and fc[0] not in c.md_l.attractor_indices
    )
    return _claim(
        "morse_graphs",
        "S: two incomparable fixed points; L: a full cycle above two fixed points",
        s_ok and l_ok,
        detail=f"S {s_labels}, L {l_labels}",
    )


def _toggle_not_surjective(c: Correspondence) -> ClaimResult:
    image = set(phi_morse(c.md_s, c.md_l).values())
    missed = sorted(ms.index for ms in c.md_l.morse_sets if ms.index not in image)
    labels = [str(c.md_l.labels[index]) for index in missed]
    return _claim(
        "phi_morse_not_surjective",
        "the full cycle of the L Morse graph is not the image of any S Morse set",
        labels == ["FC"],
        detail=f"L Morse sets outside the image: {labels}",
        witness=missed,
    )


def _self_bijective(c: Correspondence) -> ClaimResult:
    morse_map = phi_morse(c.md_s, c.md_l)
    attr_map = phi_attr(attractors(c.md_s), c.stg_l, c.md_l)
    bijective = (
        fixed_points(c.md_s) == [(0,), (1,)]
        and fixed_points(c.md_l) == [(0,), (2,)]
        and len(set(morse_map.values())) == len(morse_map) == len(c.md_l.morse_sets)
        and len(set(attr_map.values())) == len(attr_map)
    )
    return _claim(
        "maps_bijective",
        "both fixed points correspond and both maps are bijections",
        bijective,
        detail=f"S fixed points {fixed_points(c.md_s)}, L fixed points {fixed_points(c.md_l)}",
    )


PATH3D_WITNESS = ((0, 0, 1), (1, 0, 0))


def _path3d_escape(c: Correspondence) -> ClaimResult:
    pairs = escape_pairs(c.stg_s, c.stg_l)
    return _claim(
        "l_path_without_s_path",
        "some ordered pair has an L path between its images but no S path, "
        "including (0,0,1) to (1,0,0)",
        PATH3D_WITNESS in pairs,
        detail=f"{len(pairs)} pairs found",
        witness=[[list(u), list(v)] for u, v in pairs],
    )


def _path3d_printed(c: Correspondence) -> ClaimResult:
    printed = s_parameter(c.network, PATH3D_PRINTED)
    variant = Correspondence.build(c.network, printed)
    pairs = escape_pairs(variant.stg_s, variant.stg_l, exclude=fixed_points(variant.md_s))
    printed_hold = not chain_violations(c.network, printed, PATH3D_PRINTED_CHAINS)
    shipped_hold = not chain_violations(c.network, c.parameter, PATH3D_PRINTED_CHAINS)
    return ClaimResult(
        name="printed_inequalities",
        description="under the printed inequalities no pair of non-fixed states escapes",
        passed=not pairs,
        informational=True,
        detail=f"printed inequalities hold for the printed parameter: {printed_hold}; "
        f"for the shipped parameter: {shipped_hold}; {len(pairs)} escaping pairs",
        witness=[[list(u), list(v)] for u, v in pairs],
    )


def _attr4d_escape(c: Correspondence) -> ClaimResult:
    for attractor in attractors(c.md_s):
        if len(attractor) < 2:
            continue
        for state in attractor.states:
            l_reach = reachable_set(c.stg_l, [psi(state)])
            outside = [t for t in c.stg_s.states if t not in attractor and psi(t) in l_reach]
            if outside:
                return _claim(
                    "attractor_escape",
                    "a state of a multi-state S attractor reaches, in L, the image of a state outside it",
                    True,
                    detail=f"attractor {attractor.index} labelled {c.md_s.labels[attractor.index]}",
                    witness=[list(state), list(outside[0])],
                )
    return _claim(
        "attractor_escape",
        "a state of a multi-state S attractor reaches, in L, the image of a state outside it",
        False,
        detail="no multi-state attractor has an escaping image",
    )


def _merge5d_merge(c: Correspondence) -> ClaimResult:
    morse_map = phi_morse(c.md_s, c.md_l)
    multi = [ms for ms in c.md_s.morse_sets if len(ms) > 1]
    for lower in multi:
        if not c.md_s.is_attractor(lower.index):
            continue
        for upper in multi:
            if (
                not c.md_s.is_attractor(upper.index)
                and c.md_s.below(upper.index, lower.index)
                and morse_map[upper.index] == morse_map[lower.index]
            ):
                return _claim(
                    "phi_morse_not_injective",
                    "a multi-state attractor and a multi-state Morse set above it share their L image",
                    True,
                    detail=f"S Morse sets {upper.index} ({c.md_s.labels[upper.index]}) and "
                    f"{lower.index} ({c.md_s.labels[lower.index]}) both map to L Morse set "
                    f"{morse_map[lower.index]}",
                    witness=[upper.index, lower.index, morse_map[lower.index]],
                )
    return _claim(
        "phi_morse_not_injective",
        "a multi-state attractor and a multi-state Morse set above it share their L image",
        False,
        detail=f"{len(multi)} multi-state S Morse sets, none merged",
    )


def _collapse5d_attractors(c: Correspondence) -> ClaimResult:
    found = attractors(c.md_s)
    labels = [str(c.md_s.labels[a.index]) for a in found]
    has_fixed = any(len(a) == 1 for a in found)
    return _claim(
        "s_attractors",
        "S has at least two attractors, a multi-state one and a fixed point",
        len(found) >= 2 and has_fixed and any(len(a) > 1 for a in found),
        detail=f"S attractors {labels}; fixed point among them: {has_fixed}",
    )


def _collapse5d_collapse(c: Correspondence) -> ClaimResult:
    l_attractors = c.md_l.attractor_indices
    attr_map = phi_attr(attractors(c.md_s), c.stg_l, c.md_l)
    return _claim(
        "phi_attr_not_injective",
        "L has a single attractor and every S attractor maps to it",
        len(l_attractors) == 1
        and len(attr_map) >= 2
        and set(attr_map.values()) == set(l_attractors),
        detail=f"{len(l_attractors)} L attractors, S attractors map to {sorted(set(attr_map.values()))}",
        witness={str(k): v for k, v in sorted(attr_map.items())},
    )


# Examples


SELF_RN = "x : (x)"
TOGGLE_RN = "x : (~y)\ny : (~x)"
PATH3D_RN = "x : (y)\ny : (~z)\nz : (~x)"
ATTR4D_RN = "x : (y)(~w)\ny : (~z)(~w)\nz : (~y)\nw : (x)"
MERGE5D_RN = "x : (y)(~w)\ny : (v)(~w)(~z)\nz : (~y + v)\nw : (~v)(x)\nv : (x)(~y)(~w)"
COLLAPSE5D_RN = "x : (y + v)(~w)\ny : (~z)(~w)(~v)\nz : (~y)\nw : (x)(~v)\nv : (x)(~y)(~w)"

PATH3D_PRINTED = {"y->x": (1, 3, 2), "z->y": (1, 3, 2), "x->z": (1, 3, 2)}

PATH3D_PRINTED_CHAINS: Tuple[Chain, ...] = (
    (("l_y_z",), ("theta_x_y",), ("u_y_z",)),
    (("l_x_y",), ("theta_z_x",), ("u_x_y",)),
    (("l_z_x",), ("theta_y_z",), ("u_z_x",)),
)

# Products of three switching values share a group when the chain does
# not order them against each other.
W_CHAIN: Chain = (
    ("l_w_v*l_w_x",),
    ("u_w_v*l_w_x", "l_w_v*u_w_x"),
    ("theta_v_w",),
    ("theta_x_w",),
    ("theta_y_w",),
    ("u_w_v*u_w_x",),
)


def _v_chain(middle: str) -> Chain:
    return (
        ("l_v_x*l_v_y*l_v_w",),
        ("l_v_x*l_v_y*u_v_w", "l_v_x*u_v_y*l_v_w", "u_v_x*l_v_y*l_v_w"),
        ("l_v_x*u_v_y*u_v_w", "u_v_x*l_v_y*u_v_w", "u_v_x*u_v_y*l_v_w"),
        ("theta_w_v",),
        (middle,),
        ("theta_y_v",),
        ("u_v_x*u_v_y*u_v_w",),
    )


def _self() -> ExampleSpec:
    network = parse_network(SELF_RN)
    return ExampleSpec(
        name="SELF",
        network=network,
        parameter=s_parameter(network, {"x->x": (1, 3, 2)}),
        inequalities=((("l_x_x",), ("theta_x_x",), ("u_x_x",)),),
        claims=(_state_counts(2, 3), _self_bijective),
    )


def _toggle() -> ExampleSpec:
    network = parse_network(TOGGLE_RN)
    return ExampleSpec(
        name="TOGGLE",
        network=network,
        parameter=s_parameter(network, {"y->x": (1, 3, 2), "x->y": (1, 3, 2)}),
        inequalities=(
            (("l_x_y",), ("theta_y_x",), ("u_x_y",)),
            (("l_y_x",), ("theta_x_y",), ("u_y_x",)),
        ),
        claims=(_toggle_s_stg, _toggle_l_stg, _toggle_morse_graphs, _toggle_not_surjective),
    )


def _path3d() -> ExampleSpec:
    network = parse_network(PATH3D_RN)
    return ExampleSpec(
        name="PATH3D",
        network=network,
        parameter=s_parameter(network, {"y->x": (1, 3, 2), "z->y": (1, 3, 4), "x->z": (1, 3, 2)}),
        inequalities=(
            PATH3D_PRINTED_CHAINS[0],
            PATH3D_PRINTED_CHAINS[1],
            (("l_z_x",), ("u_z_x",), ("theta_y_z",)),
        ),
        claims=(_state_counts(8, 27), _path3d_escape, _path3d_printed),
    )


def _attr4d() -> ExampleSpec:
    network = parse_network(ATTR4D_RN)
    values = {
        "y->x": (1, 2, 6),
        "w->x": (1, 2, 2),
        "z->y": (1, 2, 2),
        "w->y": (1, 4, 3),
        "y->z": (1, 3, 3),
        "x->w": (1, 4, 3),
    }
    return ExampleSpec(
        name="ATTR4D",
        network=network,
        parameter=s_parameter(network, values),
        inequalities=(
            (
                ("l_x_w*l_x_y",),
                ("u_x_w*l_x_y", "l_x_w*u_x_y"),
                ("theta_w_x",),
                ("u_x_w*u_x_y",),
            ),
            (
                ("l_y_w*l_y_z",),
                ("l_y_w*u_y_z",),
                ("theta_z_y",),
                ("u_y_w*l_y_z",),
                ("theta_x_y",),
                ("u_y_w*u_y_z",),
            ),
            (("l_z_y",), ("theta_y_z",), ("u_z_y",)),
            (("l_w_x",), ("theta_x_w",), ("theta_y_w",), ("u_w_x",)),
        ),
        claims=(_state_counts(36, 225), _attr4d_escape),
    )


def _merge5d() -> ExampleSpec:
    network = parse_network(MERGE5D_RN)
    values = {
        "y->x": (1, 3, 6),
        "w->x": (1, 3, 5),
        "v->y": (1, 7, 7),
        "w->y": (1, 4, 6),
        "z->y": (1, 2, 3),
        "y->z": (1, 3, 3),
        "v->z": (1, 3, 6),
        "v->w": (1, 3, 5),
        "x->w": (1, 3, 4),
        "x->v": (1, 2, 5),
        "y->v": (1, 2, 5),
        "w->v": (1, 2, 4),
    }
    return ExampleSpec(
        name="MERGE5D",
        network=network,
        parameter=s_parameter(network, values),
        inequalities=(
            (
                ("l_x_y*l_x_w", "l_x_y*u_x_w", "u_x_y*l_x_w"),
                ("theta_w_x",),
                ("theta_v_x",),
                ("u_x_y*u_x_w",),
            ),
            (
                ("l_y_v*l_y_w*l_y_z", "l_y_v*l_y_w*u_y_z"),
                ("theta_z_y",),
                ("l_y_v*u_y_w*l_y_z",),
                ("theta_v_y",),
                ("theta_x_y",),
                (
                    "l_y_v*u_y_w*u_y_z",
                    "u_y_v*u_y_w*u_y_z",
                    "u_y_v*l_y_w*l_y_z",
                    "u_y_v*l_y_w*u_y_z",
                    "u_y_v*u_y_w*l_y_z",
                ),
            ),
            (("l_z_y+l_z_v",), ("theta_y_z",), ("l_z_y+u_z_v", "u_z_y+l_z_v", "u_z_y+u_z_v")),
            W_CHAIN,
            _v_chain("theta_z_v"),
        ),
        claims=(_state_counts(384, 5145), _merge5d_merge),
    )


def _collapse5d() -> ExampleSpec:
    network = parse_network(COLLAPSE5D_RN)
    values = {
        "y->x": (10, 20, 24),
        "v->x": (1, 10, 6),
        "w->x": (1, 2, 6),
        "z->y": (1, 2, 2),
        "w->y": (1, 4, 7),
        "v->y": (1, 4, 7),
        "y->z": (1, 3, 12),
        "x->w": (1, 4, 32),
        "v->w": (1, 2, 5),
        "x->v": (1, 2, 36),
        "y->v": (1, 2, 20),
        "w->v": (1, 2, 5),
    }
    return ExampleSpec(
        name="COLLAPSE5D",
        network=network,
        parameter=s_parameter(network, values),
        inequalities=(
            # x needs (l_x_y+u_x_v)*u_x_w above theta_v_x to hold the fixed point
            (
                ("(l_x_y+l_x_v)*l_x_w",),
                (
                    "(u_x_y+l_x_v)*l_x_w",
                    "(l_x_y+u_x_v)*l_x_w",
                    "(l_x_y+l_x_v)*u_x_w",
                    "(u_x_y+u_x_v)*l_x_w",
                ),
                ("theta_w_x",),
                ("theta_v_x",),
                ("(u_x_y+l_x_v)*u_x_w", "(l_x_y+u_x_v)*u_x_w"),
                ("(u_x_y+u_x_v)*u_x_w",),
            ),
            (
                ("l_y_z*l_y_w*l_y_v",),
                (
                    "u_y_z*l_y_w*l_y_v",
                    "l_y_z*u_y_w*l_y_v",
                    "l_y_z*l_y_w*u_y_v",
                    "u_y_z*u_y_w*l_y_v",
                    "u_y_z*l_y_w*u_y_v",
                ),
                ("theta_z_y",),
                ("l_y_z*u_y_w*u_y_v",),
                ("theta_v_y",),
                ("theta_x_y",),
                ("u_y_z*u_y_w*u_y_v",),
            ),
            (("l_z_y",), ("theta_y_z",), ("u_z_y",)),
            W_CHAIN,
            _v_chain("theta_x_v"),
        ),
        claims=(_state_counts(384, 5145), _collapse5d_attractors, _collapse5d_collapse),
    )


EXAMPLES: Dict[str, Callable[[], ExampleSpec]] = {
    "SELF": _self,
    "TOGGLE": _toggle,
    "PATH3D": _path3d,
    "ATTR4D": _attr4d,
    "MERGE5D": _merge5d,
    "COLLAPSE5D": _collapse5d,
}


def shipped_example(name: str) -> ExampleSpec:
    """
    Look up a shipped example by name, case-insensitively.

    Raises:
        UnknownExampleError: No example has that name
    """
    build = EXAMPLES.get(name.upper())
    if build is None:
        raise UnknownExampleError(
            f"unknown example '{name}'; expected one of {', '.join(EXAMPLES)}"
        )
    return build()


def run_repro(name: str, settings: Optional[Settings] = None) -> ClaimReport:
    """
    Check the inequalities and every claim of one example.

    The correspondence checks run first as their own claim; informational
    claims are reported but do not affect ``passed``.
    """
    settings = settings or get_settings()
    example = shipped_example(name)
    failures = chain_violations(example.network, example.parameter, example.inequalities)
    for failure in failures:
        logger.warning("%s inequality %s", example.name, failure)

    c = Correspondence.build(example.network, example.parameter)
    report = correspondence_report(c, settings)
    failed_checks = [check.name for check in report.checks if not check.passed]
    claims = [
        _claim(
            "correspondence_checks",
            "every correspondence check passes at the lifted parameter",
            report.passed,
            detail=f"failed: {', '.join(failed_checks)}" if failed_checks else "",
        )
    ]
    for claim in example.claims:
        result = claim(c)
        log = logger.info if result.passed or result.informational else logger.warning
        log("%s claim %s: %s", example.name, result.name, "passed" if result.passed else "failed")
        claims.append(result)

    return ClaimReport(
        example=example.name,
        nodes=list(example.network.nodes),
        s_states=len(c.stg_s),
        l_states=len(c.stg_l),
        inequalities_hold=not failures,
        claims=claims,
        passed=not failures and all(r.passed for r in claims if not r.informational),
    )


# Fixture files

TOGGLE_HAND_LIFT = (Fraction(3, 2), Fraction(5, 2))


def toggle_hand_lift(example: ExampleSpec) -> LParameter:
    """TOGGLE with bridges [3/2, 5/2] instead of the Ω margins."""
    low, high = TOGGLE_HAND_LIFT
    return LParameter(
        gamma=dict(example.parameter.gamma),
        edges={
            edge: LEdgeParams(values.l, values.u, low, high)
            for edge, values in example.parameter.edges.items()
        },
    )


def write_fixtures(directory: Union[str, Path]) -> List[Path]:
    """
    Write ``<stem>.rn``, ``<stem>-s.json`` and ``<stem>-lift.json`` for every
    example, plus ``toggle-l.json`` and ``path3d-printed-s.json``.

    Returns:
        Paths written, in writing order
    """
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    def write(filename: str, text: str) -> None:
        path = root / filename
        path.write_text(text, encoding="utf-8")
        written.append(path)

    for build in EXAMPLES.values():
        example = build()
        network, parameter = example.network, example.parameter
        write(f"{example.stem}.rn", print_network(network) + "\n")
        write(f"{example.stem}-s.json", dump_parameter(network, parameter))
        write(f"{example.stem}-lift.json", dump_parameter(network, canonical_lift(network, parameter)))
        if example.name == "TOGGLE":
            write("toggle-l.json", dump_parameter(network, toggle_hand_lift(example)))
        if example.name == "PATH3D":
            write("path3d-printed-s.json", dump_parameter(network, s_parameter(network, PATH3D_PRINTED)))
    logger.info("Wrote %d fixture files to %s", len(written), root)
    return written
