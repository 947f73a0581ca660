"""Exact and Monte Carlo tools for random graphs with a given degree sequence."""
from .degree_core import DegreeSequence, is_graphical, make_sequence, heavy_set, parse_degrees
from .graph_core import ConstraintPair, LabeledGraph, Multigraph
from .errors import DegSeqError

__version__ = "0.1.0"

__all__ = [
    "ConstraintPair",
    "DegSeqError",
    "DegreeSequence",
    "LabeledGraph",
    "Multigraph",
    "heavy_set",
    "is_graphical",
    "make_sequence",
    "parse_degrees",
]
