import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, lists, tuples

from morsebridge.core.exceptions import UnreachedAttractorError
from morsebridge.models.graph import MorseKind, MorseSet, TransitionGraph
from morsebridge.models.state import Model
from morsebridge.services.morse_service import (
    attractors,
    classify,
    escaping_edges,
    morse_graph,
    recurrent_components,
    states_missing_attractors,
)
from morsebridge.services.parameter_service import canonical_lift
from morsebridge.services.stg_service import build_stg_l, build_stg_s

from .strategies import regular_systems


def line_graph(edges, size=4) -> TransitionGraph:
    return TransitionGraph.build(Model.S, ["x"], [(i,) for i in range(size)], edges)


small_graphs = lists(
    tuples(integers(0, 5), integers(0, 5)), max_size=20
).map(
    lambda pairs: TransitionGraph.build(
        Model.S, ["x"], [(i,) for i in range(6)], [((a,), (b,)) for a, b in pairs]
    )
)


class TestRecurrentComponents:
    def test_singleton_needs_self_loop(self):
        graph = line_graph([((0,), (1,)), ((1,), (1,)), ((2,), (3,)), ((3,), (2,))])
        components = recurrent_components(graph)
        assert [ms.states for ms in components] == [((1,),), ((2,), (3,))]
        assert [ms.index for ms in components] == [0, 1]

    def test_edgeless_graph_has_none(self):
        assert recurrent_components(line_graph([])) == []

    @given(small_graphs)
    @settings(max_examples=100, deadline=None)
    def test_against_path_oracle(self, graph):
        digraph = graph.to_networkx()
        found = {state for ms in recurrent_components(graph) for state in ms.states}
        expected = {
            state
            for state in graph.states
            if graph.has_edge(state, state)
            or any(nx.has_path(digraph, target, state) for target in graph.successors(state))
        }
        assert found == expected


class TestClassify:
    def test_labels(self):
        nodes = ("x", "y", "z")
        assert classify(MorseSet(0, ((0, 0, 0),)), nodes).kind is MorseKind.FP
        full = MorseSet(0, ((0, 0, 0), (0, 1, 1), (1, 1, 0)))
        assert str(classify(full, nodes)) == "FC"
        partial = MorseSet(0, ((0, 0, 0), (0, 1, 0), (0, 1, 1)))
        label = classify(partial, nodes)
        assert label.kind is MorseKind.XC
        assert label.varying == ("y", "z")
        assert str(label) == "XC{y,z}"


class TestMorseGraph:
    def test_toggle_s(self, toggle):
        mg = morse_graph(build_stg_s(toggle.network, toggle.parameter))
        assert [ms.states for ms in mg.morse_sets] == [((0, 1),), ((1, 0),)]
        assert [str(label) for label in mg.labels] == ["FP", "FP"]
        assert mg.edges == ()
        assert mg.attractor_indices == (0, 1)

    def test_toggle_l(self, toggle, toggle_lift):
        graph = build_stg_l(toggle.network, toggle_lift)
        mg = morse_graph(graph)
        assert mg.morse_sets[0].states == ((0, 1), (1, 0), (1, 1), (1, 2), (2, 1))
        assert [str(label) for label in mg.labels] == ["FC", "FP", "FP"]
        assert mg.edges == ((0, 1), (0, 2))
        assert mg.attractor_indices == (1, 2)
        assert mg.below(0, 1) and not mg.below(1, 0)
        assert mg.find((0, 0)) == -1
        assert escaping_edges(graph, mg.morse_sets[0]) == [
            ((0, 1), (0, 2)),
            ((1, 0), (2, 0)),
            ((1, 2), (0, 2)),
            ((2, 1), (2, 0)),
        ]

    def test_hasse_edges_skip_implied_order(self):
        graph = line_graph(
            [
                ((0,), (0,)),
                ((0,), (1,)),
                ((1,), (1,)),
                ((1,), (2,)),
                ((2,), (2,)),
                ((0,), (3,)),
                ((3,), (2,)),
            ]
        )
        mg = morse_graph(graph)
        assert mg.edges == ((0, 1), (1, 2))
        assert mg.order == {(0, 1), (0, 2), (1, 2)}
        assert mg.attractor_indices == (2,)

    def test_state_without_attractor_is_an_error(self):
        graph = line_graph([((0,), (0,)), ((2,), (3,))])
        mg = morse_graph(graph)
        assert [ms.states for ms in attractors(mg)] == [((0,),)]
        with pytest.raises(UnreachedAttractorError) as info:
            attractors(mg, graph)
        assert info.value.witness == [(1,), (2,), (3,)]
        assert info.value.exit_code == 1

    @given(regular_systems())
    @settings(max_examples=200, deadline=None)
    def test_attractors_absorb_and_cover(self, system):
        network, parameter = system
        lifted = canonical_lift(network, parameter)
        for graph in (build_stg_s(network, parameter), build_stg_l(network, lifted)):
            mg = morse_graph(graph)
            found = attractors(mg, graph)
            assert found
            assert all(escaping_edges(graph, a) == [] for a in found)
            assert states_missing_attractors(graph, found) == []
            for upper, lower in mg.edges:
                assert mg.below(upper, lower)
            reduced = nx.transitive_closure(nx.DiGraph(mg.edges))
            assert set(reduced.edges()) == set(mg.order)
