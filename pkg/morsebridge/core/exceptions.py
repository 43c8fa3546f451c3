"""
Exception hierarchy for morsebridge

Every error carries a short machine-readable ``code`` and a human
``detail``; the command line renders both on a single stderr line.
"""

from typing import Any, Optional


class MorseBridgeError(Exception):
    """Base class for all morsebridge errors."""

    code: str = "error"
    exit_code: int = 1

    def __init__(self, detail: str, witness: Optional[Any] = None):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness

    def one_line(self) -> str:
        """Render the error as a single machine-parsable line."""
        text = " ".join(self.detail.split())
        return f"error {self.code}: {text}"


class InputError(MorseBridgeError):
    """Malformed or inconsistent user input."""

    code = "input"
    exit_code = 2


class CheckError(MorseBridgeError):
    """A structural check on a computed graph or map failed."""

    code = "check"
    exit_code = 1


class UsageError(InputError):
    """Malformed command-line arguments."""

    code = "usage"


# Network DSL

class NetworkSyntaxError(InputError):
    code = "syntax"

    def __init__(self, detail: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {detail}")
        self.line = line
        self.column = column


class NegativeSelfEdgeError(InputError):
    code = "negative-self-edge"


class DuplicateEdgeError(InputError):
    code = "duplicate-edge"


class UnknownNodeError(InputError):
    code = "unknown-node"


class DuplicateNodeError(InputError):
    code = "duplicate-node"


class NoTargetsError(InputError):
    code = "no-targets"


class NoSourcesError(InputError):
    code = "no-sources"


# Parameters and states

class ParameterMismatchError(InputError):
    code = "parameter-mismatch"


class InvalidParameterError(InputError):
    code = "invalid-parameter"


class UnknownExampleError(InputError):
    code = "unknown-example"


class InvalidStateError(InputError):
    code = "invalid-state"


class OddComponentError(InputError):
    code = "odd-component"


class BridgeInteriorError(InputError):
    code = "bridge-interior"


# Checks

class ZeroAtCornerError(CheckError):
    code = "zero-at-corner"


class FocalPointInBridgeError(CheckError):
    code = "focal-point-in-bridge"


class LiftFailureError(CheckError):
    code = "lift-failure"


class DescentFailureError(CheckError):
    code = "descent-failure"


class SplitImageError(CheckError):
    code = "split-image"


class MultipleTerminalError(CheckError):
    code = "multiple-terminal"


class SignatureMismatchError(CheckError):
    code = "signature-mismatch"


class UnreachedAttractorError(CheckError):
    code = "unreached-attractor"
