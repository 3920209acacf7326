"""Exact computation in graph inverse semigroups, Leavitt inverse semigroups
and Leavitt path algebras of finite directed graphs."""

from .graphs import Graph, GraphError, Path, load_graph, read_graph
from .gis import ZERO, Elem, format_element, gis_multiply, parse_element

__version__ = "0.1.0"
