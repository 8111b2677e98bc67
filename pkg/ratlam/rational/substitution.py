import logging
from typing import Dict, List, Mapping, Optional

from ..errors import ContextMismatchError, SubstitutionError
from ..term_core.types import Context
from .graph import validate_graph
from .types import FreeNode, NodeLabel, TermGraph, with_children

logger = logging.getLogger(__name__)


def splice(nodes: List[NodeLabel], g: TermGraph) -> int:
    """Append a copy of `g` to `nodes`; return the position of its root."""
    offset = len(nodes)
    for label in g.nodes:
        nodes.append(with_children(label, tuple(c + offset for c in label.children())))
    return offset + g.root


def substitute_graph(
    g: TermGraph,
    sigma: Mapping[str, TermGraph],
    target: Optional[Context] = None,
) -> TermGraph:
    """Graph substitution: every edge into a FreeVar-x node is redirected to
    the root of one shared copy of sigma[x].

    `target` is the context of the images; it defaults to the context of any
    image and must be given when `g` has an empty context.
    """
    missing = [name for name in g.context.names if name not in sigma]
    if missing:
        raise SubstitutionError(f"substitution is not total: no image for {missing}")
    validate_graph(g).raise_if_invalid()

    if target is None:
        images = [sigma[name] for name in g.context.names]
        target = images[0].context if images else Context()
    for name in g.context.names:
        if sigma[name].context != target:
            raise ContextMismatchError(
                f"image of {name!r} is over {list(sigma[name].context.names)}, expected {list(target.names)}"
            )
        validate_graph(sigma[name]).raise_if_invalid(f"image of {name!r}")

    nodes: List[NodeLabel] = list(g.nodes)
    used = {label.name for label in g.nodes if isinstance(label, FreeNode)}
    image_root: Dict[str, int] = {
        name: splice(nodes, sigma[name]) for name in g.context.names if name in used
    }

    def redirect(node: int) -> int:
        label = g.nodes[node]
        return image_root[label.name] if isinstance(label, FreeNode) else node

    for node, label in enumerate(g.nodes):
        nodes[node] = with_children(label, tuple(redirect(c) for c in label.children()))

    result = TermGraph(nodes=tuple(nodes), root=redirect(g.root), context=target).normalized()
    logger.debug("substituted %d image(s) into a %d-node graph", len(image_root), len(g.nodes))
    return result
