"""
morsebridge
Switching and Lipschitz-bridge state transition graphs, Morse graphs and
the correspondence between them
"""

__version__ = "1.0.0"
