"""
Domain models for morsebridge
"""

from morsebridge.models.graph import MorseGraph, MorseKind, MorseLabel, MorseSet, TransitionGraph
from morsebridge.models.network import Edge, LogicSpec, NodeId, RegulatoryNetwork, Sign, Term
from morsebridge.models.parameter import (
    ClassSignature,
    LEdgeParams,
    LParameter,
    Parameter,
    SEdgeParams,
    SParameter,
    ThresholdGrid,
    ThresholdOrder,
    Violation,
)
from morsebridge.models.state import Cell, Model, Side, State, Wall, WallLabel

__all__ = [
    "Cell",
    "ClassSignature",
    "Edge",
    "LEdgeParams",
    "LParameter",
    "LogicSpec",
    "Model",
    "MorseGraph",
    "MorseKind",
    "MorseLabel",
    "MorseSet",
    "NodeId",
    "Parameter",
    "RegulatoryNetwork",
    "SEdgeParams",
    "SParameter",
    "Side",
    "Sign",
    "State",
    "Term",
    "ThresholdGrid",
    "ThresholdOrder",
    "TransitionGraph",
    "Violation",
    "Wall",
    "WallLabel",
]
