import pydot

from .types import AbsNode, AppNode, BoundNode, FreeNode, NodeLabel, OpNode, TermGraph


def node_text(label: NodeLabel) -> str:
    if isinstance(label, AppNode):
        return "@"
    if isinstance(label, AbsNode):
        return f"λ{label.hint or ''}"
    if isinstance(label, OpNode):
        return label.symbol
    if isinstance(label, FreeNode):
        return label.name
    if isinstance(label, BoundNode):
        return f"%{label.index}"
    return "⊥"


def to_pydot(g: TermGraph, graph_name: str = "term") -> pydot.Dot:
    """Convert a term graph to a pydot digraph.

    Nodes are `n0`, `n1`, ... in breadth-first order from the root, which is
    drawn with a double border. Edges follow child order and are numbered
    when a node has more than one child.
    """
    g = g.normalized()
    dot = pydot.Dot(graph_name, graph_type="digraph")
    for node, label in enumerate(g.nodes):
        attrs = {"label": f'"{node_text(label)}"'}
        if node == g.root:
            attrs["peripheries"] = "2"
        dot.add_node(pydot.Node(f"n{node}", **attrs))
    for node, label in enumerate(g.nodes):
        children = label.children()
        for position, child in enumerate(children):
            if len(children) > 1:
                dot.add_edge(pydot.Edge(f"n{node}", f"n{child}", label=f'"{position}"'))
            else:
                dot.add_edge(pydot.Edge(f"n{node}", f"n{child}"))
    return dot


def to_dot(g: TermGraph, graph_name: str = "term") -> str:
    """Graphviz DOT text for `g`."""
    return to_pydot(g, graph_name).to_string()
