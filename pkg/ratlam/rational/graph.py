"""
Term graphs as rational terms: embedding finite terms, validation, unfolding
to depth-k cuts and the renaming action.
"""

import logging
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from ..errors import SubstitutionError
from ..term_core.types import Abs, App, Bottom, BoundVar, Context, FreeVar, Op, Signature, Term, BOTTOM
from .types import (
    AbsNode, AppNode, BottomNode, BoundNode, FreeNode, GraphReport, NodeLabel, OpNode,
    TermGraph, Violation, ViolationKind,
)

logger = logging.getLogger(__name__)


def graph_from_term(t: Term, ctx: Context = Context()) -> TermGraph:
    """Tree-shaped graph of a finite term, one node per term node."""
    nodes: List[Optional[NodeLabel]] = []

    def build(u: Term) -> int:
        me = len(nodes)
        nodes.append(None)
        if isinstance(u, FreeVar):
            nodes[me] = FreeNode(name=u.name)
        elif isinstance(u, BoundVar):
            nodes[me] = BoundNode(index=u.index)
        elif isinstance(u, Bottom):
            nodes[me] = BottomNode()
        elif isinstance(u, App):
            left = build(u.fun)
            right = build(u.arg)
            nodes[me] = AppNode(left=left, right=right)
        elif isinstance(u, Abs):
            nodes[me] = AbsNode(body=build(u.body), hint=u.hint)
        elif isinstance(u, Op):
            nodes[me] = OpNode(symbol=u.symbol, args=tuple(build(a) for a in u.args))
        else:
            raise TypeError(f"not a term: {u!r}")
        return me

    build(t)
    return TermGraph(nodes=tuple(nodes), root=0, context=ctx).normalized()


def to_nx(g: TermGraph) -> nx.DiGraph:
    """Directed graph of `g`; edges leaving an Abs node weigh 1, others 0."""
    graph = nx.DiGraph()
    for node, label in enumerate(g.nodes):
        graph.add_node(node, kind=label.kind)
    for node, label in enumerate(g.nodes):
        weight = 1 if isinstance(label, AbsNode) else 0
        for child in label.children():
            if 0 <= child < len(g.nodes):
                graph.add_edge(node, child, weight=weight)
    return graph


def validate_graph(g: TermGraph, sig: Optional[Signature] = None) -> GraphReport:
    """Check every term-graph invariant and collect the violations.

    Binder-depth soundness compares each BoundVar index with the least number
    of Abs nodes on any path from the root; the shortest such path is the
    witness.
    """
    violations: List[Violation] = []
    size = len(g.nodes)
    if not 0 <= g.root < size:
        violations.append(Violation(
            kind=ViolationKind.BAD_ROOT, node=g.root, message=f"root {g.root} is not a node",
        ))
        return GraphReport(ok=False, violations=violations)

    for node, label in enumerate(g.nodes):
        for child in label.children():
            if not 0 <= child < size:
                violations.append(Violation(
                    kind=ViolationKind.DANGLING_EDGE, node=node,
                    message=f"node {node} has a dangling edge to {child}",
                ))

    graph = to_nx(g)
    depth, paths = nx.single_source_dijkstra(graph, g.root, weight="weight")

    for node in range(size):
        if node not in depth:
            violations.append(Violation(
                kind=ViolationKind.UNREACHABLE_NODE, node=node,
                message=f"node {node} is unreachable from root {g.root}",
            ))

    arities: Dict[str, int] = {}
    for node in sorted(depth):
        label = g.nodes[node]
        if isinstance(label, FreeNode) and label.name not in g.context:
            violations.append(Violation(
                kind=ViolationKind.UNKNOWN_FREE_VARIABLE, node=node, path=list(paths[node]),
                message=f"free variable {label.name!r} at node {node} is not in context {list(g.context.names)}",
            ))
        elif isinstance(label, OpNode):
            expected = sig.arity(label.symbol) if sig is not None else arities.setdefault(label.symbol, len(label.args))
            if expected is None or expected != len(label.args):
                violations.append(Violation(
                    kind=ViolationKind.ARITY_MISMATCH, node=node, path=list(paths[node]),
                    message=f"symbol {label.symbol!r} at node {node} has {len(label.args)} argument(s), expected {expected}",
                ))
        elif isinstance(label, BoundNode) and label.index >= depth[node]:
            violations.append(Violation(
                kind=ViolationKind.UNSOUND_INDEX, node=node, path=list(paths[node]),
                message=f"index {label.index} at binder-depth {int(depth[node])} (node {node}, path {list(paths[node])})",
            ))

    report = GraphReport(ok=not violations, violations=violations)
    if not report.ok:
        logger.debug("graph with %d nodes has %d violation(s)", size, len(violations))
    return report


def unfold(g: TermGraph, k: int) -> Term:
    """The depth-k cut of the infinite unfolding of `g`."""
    if k < 0:
        raise ValueError(f"unfold depth must be non-negative, got {k}")
    validate_graph(g).raise_if_invalid()
    memo: Dict[Tuple[int, int], Term] = {}

    def go(node: int, budget: int) -> Term:
        if budget == 0:
            return BOTTOM
        key = (node, budget)
        if key in memo:
            return memo[key]
        label = g.nodes[node]
        if isinstance(label, AppNode):
            term: Term = App(go(label.left, budget - 1), go(label.right, budget - 1))
        elif isinstance(label, AbsNode):
            term = Abs(go(label.body, budget - 1), label.hint)
        elif isinstance(label, OpNode):
            term = Op(label.symbol, tuple(go(a, budget - 1) for a in label.args))
        elif isinstance(label, FreeNode):
            term = FreeVar(label.name)
        elif isinstance(label, BoundNode):
            term = BoundVar(label.index)
        else:
            term = BOTTOM
        memo[key] = term
        return term

    return go(g.root, k)


def rename_graph(g: TermGraph, gamma: Mapping[str, str], target: Context) -> TermGraph:
    """Relabel every FreeVar node x to gamma[x], moving `g` into `target`."""
    for name in g.context.names:
        if name not in gamma:
            raise SubstitutionError(f"renaming is not total: {name!r} has no image")
        if gamma[name] not in target:
            raise SubstitutionError(f"renaming sends {name!r} to {gamma[name]!r}, outside the target context")
    nodes = tuple(
        FreeNode(name=gamma[label.name]) if isinstance(label, FreeNode) else label
        for label in g.nodes
    )
    return TermGraph(nodes=nodes, root=g.root, context=target)

