"""
Command groups for the morsebridge command line
"""

from morsebridge.api import graphs, inputs, verify

__all__ = ["graphs", "inputs", "verify"]
