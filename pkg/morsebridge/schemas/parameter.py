"""
Pydantic schemas for parameter files
"""

from fractions import Fraction
from typing import Annotated, Any, Dict, List, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    model_validator,
)

from morsebridge.models.state import Model

RATIONAL_PATTERN = r"^\s*-?\d+(\.\d+)?(/\d+)?\s*$"


def parse_rational(value: Any) -> Fraction:
    """Parse ``"p/q"``, a decimal string or an int; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError("floats are not accepted, write the value as a 'p/q' or decimal string")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"'{value}' is not a rational") from exc
    raise ValueError(f"unsupported rational value {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": RATIONAL_PATTERN}),
]


class SEdgeEntry(BaseModel):
    """S values of one edge."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    l: Rational
    u: Rational
    theta: Rational


class LEdgeEntry(BaseModel):
    """L values of one edge."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    l: Rational
    u: Rational
    theta_minus: Rational
    theta_plus: Rational


class ParameterFile(BaseModel):
    """
    Parameter file keyed by node name and ``"src->tgt"`` edge key.

    The model is inferred from the edge entries; a file mixing S and L
    entries is rejected.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    gamma: Dict[str, Rational] = Field(..., description="Decay rate per node")
    edges: Dict[str, Union[SEdgeEntry, LEdgeEntry]] = Field(
        ..., description="Edge values keyed by 'src->tgt'"
    )

    @model_validator(mode="after")
    def validate_single_model(self) -> "ParameterFile":
        kinds = {type(entry) for entry in self.edges.values()}
        if len(kinds) > 1:
            raise ValueError("edge entries mix S (theta) and L (theta_minus/theta_plus) values")
        return self

    @property
    def model(self) -> Model:
        if any(isinstance(entry, LEdgeEntry) for entry in self.edges.values()):
            return Model.L
        return Model.S


class ViolationOut(BaseModel):
    kind: str
    subject: str
    detail: str


class ValidationReport(BaseModel):
    schema_version: int = 1
    model: Model
    valid: bool
    violations: List[ViolationOut] = Field(default_factory=list)


class SignatureOut(BaseModel):
    """Class signature (O, D) as JSON."""

    schema_version: int = 1
    model: Model
    orders: Dict[str, List[str]]
    targets: Dict[str, List[int]] = Field(
        ..., description="Comma-joined state mapped to its target state"
    )
