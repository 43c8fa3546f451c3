import json

import pytest

from morsebridge.models.graph import MorseGraph, MorseKind, MorseLabel, MorseSet
from morsebridge.models.state import Model
from morsebridge.services.export_service import (
    format_state,
    morse_graph_dot,
    morse_graph_out,
    render_json,
    state_name,
    transition_graph_dot,
    transition_graph_out,
)
from morsebridge.services.morse_service import morse_graph
from morsebridge.services.parameter_service import canonical_lift
from morsebridge.services.stg_service import build_stg


def test_state_names():
    assert state_name(Model.S, (0, 1)) == "s_0_1"
    assert state_name(Model.L, (2, 0, 1)) == "l_2_0_1"
    assert format_state((2, 0)) == "2,0"


def test_xc_label_is_quoted():
    mg = MorseGraph(
        model=Model.S,
        nodes=("x", "y", "z"),
        morse_sets=(MorseSet(0, ((0, 0, 0), (0, 1, 0))),),
        labels=(MorseLabel(MorseKind.XC, ("y",)),),
        edges=(),
    )
    assert '  m0 [label="XC{y}", shape=doublecircle, tooltip="(0,0,0) (0,1,0)"];' in morse_graph_dot(mg)


@pytest.mark.parametrize("name", ["self", "toggle"])
@pytest.mark.parametrize("model", [Model.S, Model.L])
def test_golden_renderings(name, model, golden_dir, request):
    example = request.getfixturevalue("self_example" if name == "self" else name)
    parameter = example.parameter
    if model is Model.L:
        parameter = canonical_lift(example.network, parameter)
    graph = build_stg(example.network, parameter)
    mg = morse_graph(graph)
    stem = f"{name}-{{}}-{model.value}"

    assert transition_graph_dot(graph) == (golden_dir / f"{stem.format('stg')}.dot").read_text()
    assert render_json(transition_graph_out(graph)) == (golden_dir / f"{stem.format('stg')}.json").read_text()
    assert morse_graph_dot(mg) == (golden_dir / f"{stem.format('morse')}.dot").read_text()
    assert render_json(morse_graph_out(mg)) == (golden_dir / f"{stem.format('morse')}.json").read_text()


def test_json_round_trips_through_parser(toggle):
    graph = build_stg(toggle.network, toggle.parameter)
    document = json.loads(render_json(transition_graph_out(graph)))
    assert document["model"] == "s"
    assert [tuple(e["source"]) for e in document["edges"]] == [s for s, _ in graph.edges]
