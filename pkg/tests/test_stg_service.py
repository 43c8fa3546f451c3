from fractions import Fraction

import pytest
from hypothesis import given, settings

from morsebridge.core.exceptions import (
    BridgeInteriorError,
    InvalidParameterError,
    InvalidStateError,
    ZeroAtCornerError,
)
from morsebridge.models.parameter import LEdgeParams, LParameter
from morsebridge.models.state import Cell, Model, Side, Wall, WallLabel
from morsebridge.services.parameter_service import canonical_lift, discrete_map_s
from morsebridge.services.stg_service import (
    PhaseSpace,
    async_update_oracle,
    build_stg_l,
    build_stg_s,
    corner_points,
    enumerate_states,
    focal_point,
    is_attracting,
    label_pairing_violations,
    lambda_at,
    nearest_neighbor_violations,
    sgn_corner,
    wall_label_l,
    wall_label_s,
    walls,
)

from .strategies import regular_systems

TOGGLE_S_EDGES = (
    ((0, 0), (0, 1)),
    ((0, 0), (1, 0)),
    ((0, 1), (0, 1)),
    ((1, 0), (1, 0)),
    ((1, 1), (0, 1)),
    ((1, 1), (1, 0)),
)


class TestPhaseSpace:
    def test_state_enumeration(self, toggle):
        assert enumerate_states(toggle.network, Model.S) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert len(enumerate_states(toggle.network, Model.L)) == 9

    def test_lambda_at_points(self, toggle, toggle_lift):
        assert lambda_at(toggle.network, toggle.parameter, (Fraction(1), Fraction(1))) == (3, 3)
        assert lambda_at(toggle.network, toggle.parameter, (Fraction(5), Fraction(1))) == (3, 1)
        assert lambda_at(toggle.network, toggle_lift, (Fraction(7, 4), Fraction(0))) == (3, 3)
        assert lambda_at(toggle.network, toggle_lift, (Fraction(9, 4), Fraction(0))) == (3, 1)

    def test_lambda_undefined_on_threshold(self, toggle, toggle_lift):
        with pytest.raises(InvalidParameterError):
            lambda_at(toggle.network, toggle.parameter, (Fraction(2), Fraction(1)))
        with pytest.raises(BridgeInteriorError):
            lambda_at(toggle.network, toggle_lift, (Fraction(2), Fraction(0)))

    def test_focal_points(self, toggle, toggle_lift):
        assert focal_point(toggle.network, toggle.parameter, (0, 0)) == (3, 3)
        assert focal_point(toggle.network, toggle_lift, (2, 0)) == (3, 1)
        with pytest.raises(InvalidStateError):
            focal_point(toggle.network, toggle_lift, (1, 0))

    def test_attracting_domains(self, toggle, toggle_lift):
        assert is_attracting(toggle.network, toggle.parameter, (0, 1))
        assert not is_attracting(toggle.network, toggle.parameter, (1, 1))
        assert is_attracting(toggle.network, toggle_lift, (2, 0))
        assert not is_attracting(toggle.network, toggle_lift, (2, 2))

    def test_states_outside_space(self, toggle):
        space = PhaseSpace(toggle.network, toggle.parameter)
        with pytest.raises(InvalidStateError):
            space.target((2, 0))
        with pytest.raises(InvalidStateError):
            space.target((0,))


class TestWallLabels:
    def test_s_labels(self, toggle):
        # (0,0) sends its flow up in both coordinates
        assert wall_label_s(toggle.network, toggle.parameter, Wall((0, 0), 0, Side.RIGHT)) is WallLabel.ABSORBING
        assert wall_label_s(toggle.network, toggle.parameter, Wall((1, 0), 0, Side.LEFT)) is WallLabel.ENTRANCE
        assert wall_label_s(toggle.network, toggle.parameter, Wall((0, 1), 1, Side.LEFT)) is WallLabel.ENTRANCE

    def test_missing_face(self, toggle):
        with pytest.raises(InvalidStateError):
            wall_label_s(toggle.network, toggle.parameter, Wall((1, 0), 0, Side.RIGHT))

    def test_corner_sign_disagreement_gives_bidirectional(self, toggle, toggle_lift):
        wall = Wall((0, 1), 0, Side.RIGHT)
        assert wall_label_l(toggle.network, toggle_lift, wall) is WallLabel.BIDIRECTIONAL
        face = wall.face((2, 2))
        assert face.bounds == ((1, 1), (1, 2))
        assert corner_points(toggle.network, toggle_lift, face) == [
            (Fraction(7, 4), Fraction(7, 4)),
            (Fraction(7, 4), Fraction(9, 4)),
        ]
        assert sgn_corner(toggle.network, toggle_lift, face, 0) == 0

    def test_corner_sign_agreement(self, toggle, toggle_lift):
        face = Cell(((1, 1), (0, 1)))
        assert sgn_corner(toggle.network, toggle_lift, face, 0) == 1

    def test_half_infinite_face_uses_its_finite_corner(self, toggle, toggle_lift):
        face = Wall((0, 2), 0, Side.RIGHT).face((2, 2))
        assert face.bounds == ((1, 1), (2, None))
        assert corner_points(toggle.network, toggle_lift, face) == [(Fraction(7, 4), Fraction(9, 4))]
        assert sgn_corner(toggle.network, toggle_lift, face, 0) == -1

    def test_zero_at_corner(self, toggle):
        exact = LParameter(
            gamma=dict(toggle.parameter.gamma),
            edges={
                edge: LEdgeParams(values.l, values.u, Fraction(3, 2), Fraction(3))
                for edge, values in toggle.parameter.edges.items()
            },
        )
        with pytest.raises(ZeroAtCornerError) as info:
            sgn_corner(toggle.network, exact, Cell(((2, 2), (0, 1))), 0)
        assert info.value.witness is not None

    def test_corner_signs_need_l_parameter(self, toggle):
        with pytest.raises(InvalidParameterError):
            sgn_corner(toggle.network, toggle.parameter, Cell(((1, 1), (0, 1))), 0)

    def test_shared_walls_pair_up(self, attr4d):
        lifted = canonical_lift(attr4d.network, attr4d.parameter)
        assert label_pairing_violations(walls(attr4d.network, attr4d.parameter)) == []
        assert label_pairing_violations(walls(attr4d.network, lifted)) == []


class TestBuildStg:
    def test_toggle_s(self, toggle):
        graph = build_stg_s(toggle.network, toggle.parameter)
        assert graph.model is Model.S
        assert len(graph) == 4
        assert graph.edges == TOGGLE_S_EDGES

    def test_toggle_l(self, toggle, toggle_lift):
        graph = build_stg_l(toggle.network, toggle_lift)
        assert len(graph) == 9
        assert len(graph.edges) == 18
        assert graph.self_loops() == ((0, 2), (2, 0))
        assert graph.successors((1, 1)) == ((0, 1), (1, 0), (1, 2), (2, 1))

    def test_self(self, self_example):
        stg_s = build_stg_s(self_example.network, self_example.parameter)
        assert stg_s.edges == (((0,), (0,)), ((1,), (1,)))
        lifted = canonical_lift(self_example.network, self_example.parameter)
        stg_l = build_stg_l(self_example.network, lifted)
        assert stg_l.edges == (((0,), (0,)), ((1,), (0,)), ((1,), (2,)), ((2,), (2,)))

    def test_model_mismatch(self, toggle, toggle_lift):
        with pytest.raises(InvalidParameterError):
            build_stg_s(toggle.network, toggle_lift)
        with pytest.raises(InvalidParameterError):
            build_stg_l(toggle.network, toggle.parameter)

    def test_oracle_on_fixture(self, attr4d):
        graph = build_stg_s(attr4d.network, attr4d.parameter)
        oracle = async_update_oracle(attr4d.network, discrete_map_s(attr4d.network, attr4d.parameter))
        assert graph.edges == oracle.edges

    @given(regular_systems())
    @settings(max_examples=200, deadline=None)
    def test_oracle_equivalence(self, system):
        network, parameter = system
        graph = build_stg_s(network, parameter)
        oracle = async_update_oracle(network, discrete_map_s(network, parameter))
        assert graph.edges == oracle.edges

    @given(regular_systems())
    @settings(max_examples=200, deadline=None)
    def test_nearest_neighbor_and_pairing(self, system):
        network, parameter = system
        lifted = canonical_lift(network, parameter)
        assert nearest_neighbor_violations(build_stg_s(network, parameter)) == []
        assert nearest_neighbor_violations(build_stg_l(network, lifted)) == []
        for candidate in (parameter, lifted):
            assert label_pairing_violations(walls(network, candidate)) == []
