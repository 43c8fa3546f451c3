from dataclasses import replace

import pytest
from hypothesis import HealthCheck, given, settings

from morsebridge.config import Settings
from morsebridge.core.exceptions import (
    DescentFailureError,
    LiftFailureError,
    OddComponentError,
    SplitImageError,
)
from morsebridge.models.graph import TransitionGraph
from morsebridge.models.state import Model
from morsebridge.services.correspondence_service import (
    Correspondence,
    CorrespondenceService,
    bridge_between,
    correspondence_report,
    descend_to_constant,
    find_path,
    fixed_points,
    has_path,
    lift_path,
    phi_attr,
    phi_morse,
    psi,
    psi_inverse,
    reachable_set,
    strict_has_path,
    verify_correspondence,
)
from morsebridge.services.morse_service import attractors
from morsebridge.services.repro_service import shipped_example

from .strategies import regular_systems

CHECK_NAMES = [
    "async_update_equivalence",
    "edge_lifting",
    "path_lifting",
    "descent",
    "order_preserving",
    "attractor_surjection",
    "fixed_point_bijection",
]


@pytest.fixture
def toggle_c(toggle):
    return Correspondence.build(toggle.network, toggle.parameter)


class TestEmbedding:
    def test_psi(self):
        assert psi((0, 1, 2)) == (0, 2, 4)
        assert psi_inverse((0, 2, 4)) == (0, 1, 2)
        assert bridge_between((0, 1), (1, 1)) == (1, 2)

    def test_psi_inverse_rejects_bridges(self):
        with pytest.raises(OddComponentError):
            psi_inverse((1, 2))

    def test_constant_domains_are_the_image(self, toggle_c):
        even = [s for s in toggle_c.stg_l.states if all(level % 2 == 0 for level in s)]
        assert sorted(psi(s) for s in toggle_c.stg_s.states) == even


class TestPaths:
    def test_reflexive_and_strict(self):
        graph = TransitionGraph.build(Model.S, ["x"], [(0,), (1,)], [])
        assert has_path(graph, (0,), (0,))
        assert find_path(graph, (0,), (0,)) == [(0,)]
        assert not strict_has_path(graph, (0,), (0,))
        assert find_path(graph, (0,), (1,)) is None

    def test_strict_path_through_cycle(self, toggle_c):
        assert find_path(toggle_c.stg_l, (1, 1), (1, 1), strict=True) == [(1, 1), (0, 1), (1, 1)]
        assert strict_has_path(toggle_c.stg_l, (0, 2), (0, 2))
        assert not strict_has_path(toggle_c.stg_l, (0, 0), (0, 0))

    def test_shortest_path(self, toggle_c):
        assert find_path(toggle_c.stg_s, (0, 0), (0, 1)) == [(0, 0), (0, 1)]
        assert find_path(toggle_c.stg_l, (0, 0), (2, 0)) == [(0, 0), (1, 0), (2, 0)]
        assert find_path(toggle_c.stg_s, (0, 1), (1, 0)) is None

    def test_reachable_set(self, toggle_c):
        assert reachable_set(toggle_c.stg_s, [(0, 0)]) == {(0, 0), (0, 1), (1, 0)}

    def test_path3d_witness(self, path3d):
        c = Correspondence.build(path3d.network, path3d.parameter)
        assert not has_path(c.stg_s, (0, 0, 1), (1, 0, 0))
        assert has_path(c.stg_l, psi((0, 0, 1)), psi((1, 0, 0)))


class TestLifting:
    def test_lift_path(self, toggle_c):
        lifted = lift_path([(0, 0), (0, 1), (0, 1)], toggle_c.stg_l)
        assert lifted == [(0, 0), (0, 1), (0, 2), (0, 2), (0, 2)]

    def test_lift_failure(self, toggle_c):
        with pytest.raises(LiftFailureError):
            lift_path([(0, 1), (1, 1)], toggle_c.stg_l)

    def test_descent(self, toggle_c):
        assert descend_to_constant((2, 2), toggle_c.stg_l) == []
        steps = descend_to_constant((1, 1), toggle_c.stg_l)
        assert len(steps) == 2
        assert steps[-1] in {(0, 2), (2, 0), (0, 0), (2, 2)}

    def test_descent_failure(self):
        graph = TransitionGraph.build(Model.L, ["x"], [(0,), (1,), (2,)], [((1,), (1,))])
        with pytest.raises(DescentFailureError):
            descend_to_constant((1,), graph)


class TestMorseMaps:
    def test_toggle_phi_morse(self, toggle_c):
        assert phi_morse(toggle_c.md_s, toggle_c.md_l) == {0: 1, 1: 2}
        assert phi_attr(attractors(toggle_c.md_s), toggle_c.stg_l, toggle_c.md_l) == {0: 1, 1: 2}

    def test_split_image(self, toggle_c):
        with pytest.raises(SplitImageError):
            phi_morse(toggle_c.md_l, toggle_c.md_s)

    def test_fixed_points(self, toggle_c):
        assert fixed_points(toggle_c.md_s) == [(0, 1), (1, 0)]
        assert fixed_points(toggle_c.md_l) == [(0, 2), (2, 0)]


class TestCorrespondenceService:
    def test_checks_run_in_report_order(self, toggle_c, app_settings):
        service = CorrespondenceService(toggle_c, app_settings)
        results = [check() for check in service.checks()]
        assert [result.name for result in results] == CHECK_NAMES
        assert all(result.passed for result in results)

    def test_missing_l_edge_fails_edge_lifting(self, toggle_c, app_settings):
        kept = [edge for edge in toggle_c.stg_l.edges if edge != ((0, 0), (1, 0))]
        broken = replace(
            toggle_c,
            stg_l=TransitionGraph.build(Model.L, toggle_c.stg_l.nodes, toggle_c.stg_l.states, kept),
        )
        result = CorrespondenceService(broken, app_settings).check_edge_lifting()
        assert not result.passed
        assert result.witness == [(0, 0), (1, 0)]

    def test_report_matches_module_function(self, toggle_c, app_settings):
        service = CorrespondenceService(toggle_c, app_settings)
        assert service.report().model_dump() == correspondence_report(toggle_c, app_settings).model_dump()


class TestReport:
    def test_toggle_report(self, toggle, app_settings):
        report = verify_correspondence(toggle.network, toggle.parameter, app_settings)
        assert report.passed
        assert [check.name for check in report.checks] == CHECK_NAMES
        assert report.delta == "1/4"
        assert (report.s_states, report.l_states) == (4, 9)
        assert not report.phi_morse_surjective
        assert report.phi_morse_injective
        assert [entry.target_label for entry in report.phi_morse] == ["FP", "FP"]

    def test_thread_pool_gives_same_report(self, toggle_c):
        serial = correspondence_report(toggle_c, Settings(max_workers=1))
        pooled = correspondence_report(toggle_c, Settings(max_workers=4))
        assert serial.model_dump() == pooled.model_dump()

    @pytest.mark.parametrize("name", ["SELF", "PATH3D", "ATTR4D"])
    def test_small_examples_pass(self, name, app_settings):
        example = shipped_example(name)
        report = verify_correspondence(example.network, example.parameter, app_settings)
        failed = [check.name for check in report.checks if not check.passed]
        assert failed == []

    @given(regular_systems())
    @settings(
        max_examples=200,
        deadline=None,
        suppress_health_check=[HealthCheck.too_slow],
    )
    def test_random_systems(self, system):
        network, parameter = system
        report = verify_correspondence(
            network, parameter, Settings(lift_random_paths=20, max_workers=1)
        )
        failed = [(check.name, check.detail) for check in report.checks if not check.passed]
        assert failed == []
