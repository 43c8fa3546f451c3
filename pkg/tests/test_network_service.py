import pytest
from hypothesis import given, settings

from morsebridge.core.exceptions import (
    DuplicateEdgeError,
    DuplicateNodeError,
    NegativeSelfEdgeError,
    NetworkSyntaxError,
    NoSourcesError,
    NoTargetsError,
)
from morsebridge.models.network import Edge, Sign
from morsebridge.services.network_service import load_network, parse_network, print_network

from .strategies import networks


class TestParseNetwork:
    def test_toggle(self):
        network = parse_network("x : (~y)\ny : (~x)")
        assert network.nodes == ("x", "y")
        assert network.edges == {
            Edge("y", "x", Sign.REPRESSION),
            Edge("x", "y", Sign.REPRESSION),
        }
        assert network.out_degree("x") == 1
        assert network.targets("y") == ("x",)

    def test_self_activation(self):
        network = parse_network("x : (x)")
        assert network.edges == {Edge("x", "x", Sign.ACTIVATION)}
        assert network.sources("x") == ("x",)

    def test_sum_and_product_groups(self):
        network = parse_network("x : (y + ~z)(w)\ny : (x)\nz : (x)\nw : (x)")
        groups = network.logic("x").groups
        assert len(groups) == 2
        assert [str(term) for term in groups[0]] == ["y", "~z"]
        assert network.out_degree("x") == 3
        assert network.targets("x") == ("y", "z", "w")

    def test_whitespace_separates_summands(self):
        network = parse_network("x : (y ~x2)\ny : (x)\nx2 : (y)")
        assert [str(term) for term in network.logic("x").terms] == ["y", "~x2"]

    def test_comments_blank_lines_and_crlf(self):
        text = "# toggle switch\r\n\r\nx : (~y)   # repressed by y\r\ny : (~x)\r\n"
        network = parse_network(text)
        assert network.nodes == ("x", "y")

    def test_node_order_follows_declarations(self):
        network = parse_network("y : (~x)\nx : (~y)")
        assert network.nodes == ("y", "x")
        assert network.index == {"y": 0, "x": 1}

    def test_negative_self_edge(self):
        with pytest.raises(NegativeSelfEdgeError):
            parse_network("x : (~x)(y)\ny : (x)")

    def test_negative_self_edge_reported_before_syntax_errors(self):
        with pytest.raises(NegativeSelfEdgeError):
            parse_network("x : (~x\ny : (((")

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            parse_network("x : (y)(y)\ny : (x)")

    def test_duplicate_node(self):
        with pytest.raises(DuplicateNodeError) as info:
            parse_network("x : (y)\ny : (x)\nx : (~y)")
        assert "line 3" in info.value.detail

    def test_source_without_logic_line(self):
        with pytest.raises(NoSourcesError):
            parse_network("x : (y)")

    def test_node_without_targets(self):
        with pytest.raises(NoTargetsError):
            parse_network("x : (y)\ny : (y)")

    @pytest.mark.parametrize(
        "text, line",
        [
            ("x : (~y\ny : (~x)", 1),
            ("x : (~y)\ny  (~x)", 2),
            ("x : ()\ny : (~x)", 1),
            ("x :\ny : (~x)", 1),
        ],
    )
    def test_syntax_errors_carry_position(self, text, line):
        with pytest.raises(NetworkSyntaxError) as info:
            parse_network(text)
        assert info.value.line == line
        assert info.value.column >= 1
        assert info.value.exit_code == 2

    def test_empty_text(self):
        with pytest.raises(NetworkSyntaxError):
            parse_network("# nothing here\n")


class TestPrintNetwork:
    def test_canonical_text(self):
        network = parse_network("x:(y ~z)( w )\ny:(x)\nz:(x)\nw:(x)")
        assert print_network(network) == "x : (y + ~z)(w)\ny : (x)\nz : (x)\nw : (x)"

    @given(networks())
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, network):
        assert parse_network(print_network(network)) == network

    def test_fixture_files_are_canonical(self, fixtures_dir):
        for path in sorted(fixtures_dir.glob("*.rn")):
            network = load_network(path)
            assert print_network(network) + "\n" == path.read_text(encoding="utf-8")
