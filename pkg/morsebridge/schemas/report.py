"""
Pydantic schemas for verification and reproduction reports
"""

from typing import Any, List, Optional

from pydantic import BaseModel, Field

from morsebridge.schemas.graph import MorseGraphOut


class CheckResult(BaseModel):
    """Outcome of one structural check, with a witness on failure."""

    name: str
    passed: bool
    detail: str = ""
    witness: Optional[Any] = None


class MorseMapEntry(BaseModel):
    source_index: int
    source_label: str
    target_index: int
    target_label: str


class CorrespondenceReport(BaseModel):
    """
    S and L dynamics compared at Ω-corresponding parameters.

    ``checks`` appear in a fixed order; ``passed`` is their conjunction.
    """

    schema_version: int = 1
    nodes: List[str]
    delta: str = Field(..., description="Half-width of every lifted bridge interval")
    s_states: int
    l_states: int
    s_morse_graph: MorseGraphOut
    l_morse_graph: MorseGraphOut
    phi_morse: List[MorseMapEntry] = Field(default_factory=list)
    phi_attr: List[MorseMapEntry] = Field(default_factory=list)
    phi_morse_surjective: bool
    phi_morse_injective: bool
    phi_attr_injective: bool
    checks: List[CheckResult]
    passed: bool


class ClaimResult(BaseModel):
    name: str
    description: str
    passed: bool
    informational: bool = False
    detail: str = ""
    witness: Optional[Any] = None


class ClaimReport(BaseModel):
    """Claims checked on one shipped example."""

    schema_version: int = 1
    example: str
    nodes: List[str]
    s_states: int
    l_states: int
    inequalities_hold: bool
    claims: List[ClaimResult]
    passed: bool
