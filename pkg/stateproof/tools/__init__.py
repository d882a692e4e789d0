"""
Command implementations for the stateproof CLI.
"""

from . import commands

__all__ = ["commands"]
