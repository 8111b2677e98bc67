"""
Rational lambda-Sigma terms as finite rooted term graphs.
"""

from .types import (
    AppNode, AbsNode, OpNode, FreeNode, BoundNode, BottomNode, NodeLabel, TermGraph,
    ViolationKind, Violation, GraphReport,
    AppOf, AbsOf, OpOf, BoundOf, Const, FlatRule, FlatSystem,
)
from .graph import graph_from_term, validate_graph, unfold, rename_graph, to_nx
from .bisim import bisim_eq, minimize, subtree_count, cuts_agree
from .substitution import substitute_graph
from .flat import solve_flat_system
from .dot import to_dot, to_pydot

__all__ = [
    'AppNode', 'AbsNode', 'OpNode', 'FreeNode', 'BoundNode', 'BottomNode', 'NodeLabel', 'TermGraph',
    'ViolationKind', 'Violation', 'GraphReport',
    'AppOf', 'AbsOf', 'OpOf', 'BoundOf', 'Const', 'FlatRule', 'FlatSystem',
    'graph_from_term', 'validate_graph', 'unfold', 'rename_graph', 'to_nx',
    'bisim_eq', 'minimize', 'subtree_count', 'cuts_agree',
    'substitute_graph', 'solve_flat_system', 'to_dot', 'to_pydot',
]
