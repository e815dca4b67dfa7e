"""Exact super lambda lengths for triangulated polygons.

Two independent routes -- double dimer covers on snake graphs and a cluster
character over submodule lattices of dual-number induced modules -- plus the
lattice dictionary between them and desk-scale verification sweeps.
"""

from . import bridge, cc, polygon, snake, strmod, superring

__all__ = ["bridge", "cc", "polygon", "snake", "strmod", "superring"]
