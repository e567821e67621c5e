"""Synthesis and exact verification of n-player games whose unique Nash
equilibrium has derangement-degree coordinates."""

__version__ = "0.1.0"
