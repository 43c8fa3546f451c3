"""
Export service: DOT and JSON rendering

Every rendering is a pure function of its input with sorted nodes and
edges, so identical inputs give identical bytes.
"""

import json
from typing import List

from pydantic import BaseModel

from morsebridge.models.graph import MorseGraph, TransitionGraph
from morsebridge.models.state import Model, State
from morsebridge.schemas.graph import EdgeOut, MorseGraphOut, MorseSetOut, TransitionGraphOut


def render_json(document: BaseModel) -> str:
    return json.dumps(document.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


def state_name(model: Model, state: State) -> str:
    """DOT identifier such as ``s_0_1`` or ``l_2_0``."""
    return "_".join([model.value, *(str(level) for level in state)])


def format_state(state: State) -> str:
    return ",".join(str(level) for level in state)


def transition_graph_out(graph: TransitionGraph) -> TransitionGraphOut:
    return TransitionGraphOut(
        model=graph.model,
        nodes=list(graph.nodes),
        states=[list(state) for state in graph.states],
        edges=[EdgeOut(source=list(s), target=list(t)) for s, t in graph.edges],
    )


def morse_graph_out(mg: MorseGraph) -> MorseGraphOut:
    return MorseGraphOut(
        model=mg.model,
        nodes=list(mg.nodes),
        morse_sets=[
            MorseSetOut(
                index=ms.index,
                label=str(label),
                attractor=mg.is_attractor(ms.index),
                states=[list(state) for state in ms.states],
            )
            for ms, label in zip(mg.morse_sets, mg.labels)
        ],
        edges=[[upper, lower] for upper, lower in mg.edges],
    )


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def transition_graph_dot(graph: TransitionGraph) -> str:
    name = f"stg_{graph.model.value}"
    lines: List[str] = [f"digraph {name} {{"]
    lines.append(f"  // nodes: {', '.join(graph.nodes)}")
    for state in graph.states:
        lines.append(
            f"  {state_name(graph.model, state)} [label={_dot_quote(format_state(state))}];"
        )
    for source, target in graph.edges:
        lines.append(f"  {state_name(graph.model, source)} -> {state_name(graph.model, target)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def morse_graph_dot(mg: MorseGraph) -> str:
    lines: List[str] = [f"digraph morse_{mg.model.value} {{"]
    for ms, label in zip(mg.morse_sets, mg.labels):
        members = " ".join("(" + format_state(state) + ")" for state in ms.states)
        shape = "doublecircle" if mg.is_attractor(ms.index) else "circle"
        lines.append(
            f"  m{ms.index} [label={_dot_quote(str(label))}, shape={shape}, "
            f"tooltip={_dot_quote(members)}];"
        )
    for upper, lower in mg.edges:
        lines.append(f"  m{upper} -> m{lower};")
    lines.append("}")
    return "\n".join(lines) + "\n"
