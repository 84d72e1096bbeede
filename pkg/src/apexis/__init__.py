"""Planarity, apex sets and small-graph enumeration with checkable certificates."""

from .apex import is_l_apex
from .graph import Graph
from .graph6 import decode, encode
from .planarity import embed, is_planar, planar

__version__ = "0.1.0"

__all__ = ["Graph", "decode", "embed", "encode", "is_l_apex", "is_planar", "planar"]
