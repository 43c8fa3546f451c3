"""
Core functionality for morsebridge
"""

from morsebridge.core.exceptions import CheckError, InputError, MorseBridgeError
from morsebridge.core.logging import configure_logging

__all__ = [
    "CheckError",
    "InputError",
    "MorseBridgeError",
    "configure_logging",
]
