"""
Network service: parsing and printing the regulatory-network DSL

One line per node::

    x : (y + ~z)(w)     # comment

Terms inside a group are summed (``+`` or plain whitespace separates
them), groups are multiplied, ``~`` marks repression. Node order is the
order of the declaration lines.
"""

import logging
import re
from pathlib import Path
from typing import List, Tuple, Union

from morsebridge.core.exceptions import (
    DuplicateNodeError,
    NegativeSelfEdgeError,
    NetworkSyntaxError,
    NoSourcesError,
)
from morsebridge.models.network import LogicSpec, NodeId, RegulatoryNetwork, Sign, Term

logger = logging.getLogger(__name__)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_HEAD = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:")
_REPRESSED = re.compile(r"~\s*([A-Za-z_][A-Za-z0-9_]*)")

Declaration = Tuple[NodeId, LogicSpec, int]


class _LineParser:
    """Recursive-descent parser for a single declaration line."""

    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def fail(self, detail: str) -> NetworkSyntaxError:
        return NetworkSyntaxError(detail, self.line, self.pos + 1)

    def _skip_blanks(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def _at_end(self) -> bool:
        return self.pos >= len(self.text)

    def _identifier(self, what: str) -> str:
        self._skip_blanks()
        match = _IDENT.match(self.text, self.pos)
        if match is None:
            raise self.fail(f"expected {what}")
        self.pos = match.end()
        return match.group()

    def _expect(self, char: str) -> None:
        self._skip_blanks()
        if self._at_end() or self.text[self.pos] != char:
            raise self.fail(f"expected '{char}'")
        self.pos += 1

    def _term(self) -> Term:
        self._skip_blanks()
        sign = Sign.ACTIVATION
        if not self._at_end() and self.text[self.pos] == "~":
            sign = Sign.REPRESSION
            self.pos += 1
        return Term(self._identifier("source node"), sign)

    def _group(self) -> Tuple[Term, ...]:
        self._expect("(")
        terms = [self._term()]
        while True:
            self._skip_blanks()
            if self._at_end():
                raise self.fail("unclosed group, expected ')'")
            char = self.text[self.pos]
            if char == ")":
                self.pos += 1
                return tuple(terms)
            if char == "+":
                self.pos += 1
            terms.append(self._term())

    def parse(self) -> Tuple[NodeId, LogicSpec]:
        name = self._identifier("node name")
        self._expect(":")
        groups = []
        self._skip_blanks()
        while not self._at_end():
            groups.append(self._group())
            self._skip_blanks()
        if not groups:
            raise self.fail("expected '(' to open a logic group")
        return name, LogicSpec(tuple(groups))


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip("\r")


def _reject_negative_self_edges(lines: List[str]) -> None:
    """Negative self-regulation is reported ahead of any other problem."""
    for number, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        head = _HEAD.match(line)
        if head is None:
            continue
        target = head.group(1)
        for match in _REPRESSED.finditer(line, head.end()):
            if match.group(1) == target:
                raise NegativeSelfEdgeError(
                    f"line {number}: negative self-regulation '{target} -| {target}'"
                )


def parse_network(text: str) -> RegulatoryNetwork:
    """
    Parse DSL text into a validated network.

    Args:
        text: DSL source, LF or CRLF line endings

    Returns:
        RegulatoryNetwork with node order taken from the declaration lines

    Raises:
        NetworkSyntaxError: Malformed line, with line and column
        NegativeSelfEdgeError: A node represses itself
        DuplicateNodeError: A node declared on two lines
        NoSourcesError: A source node without a logic line
        DuplicateEdgeError, NoTargetsError: From network validation
    """
    lines = text.splitlines()
    _reject_negative_self_edges(lines)

    declarations: List[Declaration] = []
    for number, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        name, logic = _LineParser(line, number).parse()
        declarations.append((name, logic, number))

    if not declarations:
        raise NetworkSyntaxError("no node declarations", 1, 1)

    first_line = {}
    for name, _, number in declarations:
        if name in first_line:
            raise DuplicateNodeError(
                f"line {number}: node '{name}' already declared on line {first_line[name]}"
            )
        first_line[name] = number

    for name, logic, number in declarations:
        for term in logic.terms:
            if term.source not in first_line:
                raise NoSourcesError(
                    f"line {number}: node '{term.source}' regulates '{name}' "
                    "but has no logic line"
                )

    network = RegulatoryNetwork(
        nodes=tuple(name for name, _, _ in declarations),
        logics=tuple(logic for _, logic, _ in declarations),
    )
    logger.debug(
        "Parsed network with %d nodes and %d edges", network.dimension, len(network.edges)
    )
    return network


def print_network(network: RegulatoryNetwork) -> str:
    """Canonical DSL text, one line per node in node order, no trailing newline."""
    return "\n".join(
        f"{node} : {logic}" for node, logic in zip(network.nodes, network.logics)
    )


def load_network(path: Union[str, Path]) -> RegulatoryNetwork:
    """Read and parse a ``.rn`` file (UTF-8)."""
    return parse_network(Path(path).read_text(encoding="utf-8"))
