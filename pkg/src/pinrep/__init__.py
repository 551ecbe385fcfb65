"""Pinned repetitions in codings of rotations, interval exchanges and
polynomial sequences on the torus, computed in exact arithmetic."""

__version__ = "0.1.0"
