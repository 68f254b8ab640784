"""Search and verification tools for Kochen-Specker graphs."""

from .graph import Graph, GraphFormatError, emit_graph6, parse_graph6

__version__ = "0.1.0"

__all__ = ["Graph", "GraphFormatError", "emit_graph6", "parse_graph6", "__version__"]
