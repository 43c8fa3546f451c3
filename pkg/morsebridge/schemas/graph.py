"""
Pydantic schemas for graph exports and path queries
"""

from typing import List

from pydantic import BaseModel, Field

from morsebridge.models.state import Model


class EdgeOut(BaseModel):
    source: List[int]
    target: List[int]


class TransitionGraphOut(BaseModel):
    """State transition graph, states and edges sorted."""

    schema_version: int = 1
    model: Model
    nodes: List[str]
    states: List[List[int]]
    edges: List[EdgeOut]


class MorseSetOut(BaseModel):
    index: int
    label: str = Field(..., description="FP, FC or XC{...}")
    attractor: bool
    states: List[List[int]]


class MorseGraphOut(BaseModel):
    """Morse sets with labels and the Hasse edges (upper, lower)."""

    schema_version: int = 1
    model: Model
    nodes: List[str]
    morse_sets: List[MorseSetOut]
    edges: List[List[int]]


class PathResult(BaseModel):
    schema_version: int = 1
    model: Model
    source: List[int]
    target: List[int]
    strict: bool = False
    exists: bool
    path: List[List[int]] = Field(default_factory=list, description="Shortest witness path")
