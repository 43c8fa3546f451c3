"""
Business logic services for morsebridge
"""

from morsebridge.services.network_service import parse_network, print_network
from morsebridge.services.parameter_service import canonical_lift, class_signature, validate
from morsebridge.services.stg_service import build_stg, build_stg_l, build_stg_s
from morsebridge.services.morse_service import attractors, morse_graph
from morsebridge.services.correspondence_service import verify_correspondence
from morsebridge.services.repro_service import shipped_example, run_repro

__all__ = [
    "attractors",
    "build_stg",
    "build_stg_l",
    "build_stg_s",
    "canonical_lift",
    "class_signature",
    "morse_graph",
    "shipped_example",
    "parse_network",
    "print_network",
    "run_repro",
    "validate",
    "verify_correspondence",
]
