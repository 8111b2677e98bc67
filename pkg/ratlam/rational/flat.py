"""
Solving flat equation systems.

Every equation variable becomes one graph node (constants are spliced in by
copy), so the solution of a variable is the graph rooted at its node. That
graph is the unique solution: each node's label and children are forced by
its equation.
"""

import logging
from typing import Dict, List, Optional, Sequence

from ..errors import FlatSystemError
from .bisim import minimize
from .graph import validate_graph
from .substitution import splice
from .types import (
    AbsNode, AbsOf, AppNode, AppOf, BoundNode, BoundOf, Const, FlatSystem, NodeLabel,
    OpNode, OpOf, TermGraph, ViolationKind,
)

logger = logging.getLogger(__name__)


def solve_flat_system(s: FlatSystem, roots: Optional[Sequence[str]] = None) -> Dict[str, TermGraph]:
    """Map each variable in `roots` (default: all) to its minimized solution graph."""
    roots = list(s.equations) if roots is None else list(roots)
    unknown = [r for r in roots if r not in s.equations]
    if unknown:
        raise FlatSystemError(f"not equation variables: {unknown}")

    position: Dict[str, int] = {}
    nodes: List[Optional[NodeLabel]] = []
    for var, rule in s.equations.items():
        if not isinstance(rule, Const):
            position[var] = len(nodes)
            nodes.append(None)
    for var, rule in s.equations.items():
        if isinstance(rule, Const):
            position[var] = splice(nodes, rule.graph)

    for var, rule in s.equations.items():
        at = position[var]
        if isinstance(rule, AppOf):
            nodes[at] = AppNode(left=position[rule.left], right=position[rule.right])
        elif isinstance(rule, AbsOf):
            nodes[at] = AbsNode(body=position[rule.body], hint=rule.hint)
        elif isinstance(rule, OpOf):
            nodes[at] = OpNode(symbol=rule.symbol, args=tuple(position[a] for a in rule.args))
        elif isinstance(rule, BoundOf):
            nodes[at] = BoundNode(index=rule.index)

    owner = {at: var for var, at in position.items()}
    solution: Dict[str, TermGraph] = {}
    for root in roots:
        graph = TermGraph(nodes=tuple(nodes), root=position[root], context=s.context)
        report = validate_graph(graph, s.signature)
        problems = [v for v in report.violations if v.kind != ViolationKind.UNREACHABLE_NODE]
        if problems:
            details = "; ".join(
                f"{v.message} via {' -> '.join(owner.get(n, f'<{n}>') for n in v.path)}" if v.path else v.message
                for v in problems
            )
            raise FlatSystemError(f"no sound solution graph for {root!r}: {details}")
        solution[root] = minimize(graph.normalized())
        logger.debug("solved %r: %d node(s)", root, len(solution[root].nodes))
    return solution
