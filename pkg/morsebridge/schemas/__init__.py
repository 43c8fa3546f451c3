"""
Pydantic schemas for morsebridge files and reports
"""

from morsebridge.schemas.graph import (
    EdgeOut,
    MorseGraphOut,
    MorseSetOut,
    PathResult,
    TransitionGraphOut,
)
from morsebridge.schemas.parameter import (
    LEdgeEntry,
    ParameterFile,
    SEdgeEntry,
    SignatureOut,
    ValidationReport,
    ViolationOut,
)
from morsebridge.schemas.report import (
    CheckResult,
    ClaimReport,
    ClaimResult,
    CorrespondenceReport,
    MorseMapEntry,
)

__all__ = [
    "CheckResult",
    "ClaimReport",
    "ClaimResult",
    "CorrespondenceReport",
    "EdgeOut",
    "LEdgeEntry",
    "MorseGraphOut",
    "MorseMapEntry",
    "MorseSetOut",
    "ParameterFile",
    "PathResult",
    "SEdgeEntry",
    "SignatureOut",
    "TransitionGraphOut",
    "ValidationReport",
    "ViolationOut",
]
