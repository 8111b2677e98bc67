"""
Alpha-equivalence of rational terms.

Nameless term graphs are alpha-equivalent exactly when their roots are
bisimilar: same constructor, same variable name, index or symbol, and
children related pairwise. `bisim_eq` and `minimize` decide this by partition
refinement; `cuts_agree` compares the depth-k cuts directly.
"""

import logging
from typing import Dict, List, Sequence, Set, Tuple

from ..errors import ContextMismatchError
from .graph import validate_graph
from .types import TermGraph, label_key, with_children

logger = logging.getLogger(__name__)


def _refine(labels: Sequence[tuple], children: Sequence[Tuple[int, ...]]) -> List[int]:
    """Coarsest stable partition; block ids numbered by first occurrence."""
    block = _number([(key,) for key in labels])
    rounds = 0
    while True:
        rounds += 1
        signatures = [
            (block[node], tuple(block[c] for c in children[node]))
            for node in range(len(labels))
        ]
        refined = _number(signatures)
        if max(refined, default=-1) == max(block, default=-1):
            logger.debug("partition refinement stable after %d round(s)", rounds)
            return refined
        block = refined


def _number(signatures: Sequence[tuple]) -> List[int]:
    ids: Dict[tuple, int] = {}
    return [ids.setdefault(sig, len(ids)) for sig in signatures]


def _check_contexts(g: TermGraph, h: TermGraph) -> None:
    if g.context != h.context:
        raise ContextMismatchError(
            f"contexts differ: {list(g.context.names)} vs {list(h.context.names)}"
        )


def bisim_eq(g: TermGraph, h: TermGraph) -> bool:
    """True iff the unfoldings of `g` and `h` agree at every depth."""
    _check_contexts(g, h)
    validate_graph(g).raise_if_invalid()
    validate_graph(h).raise_if_invalid()
    offset = len(g.nodes)
    labels = [label_key(n) for n in g.nodes] + [label_key(n) for n in h.nodes]
    children = [n.children() for n in g.nodes] + [
        tuple(c + offset for c in n.children()) for n in h.nodes
    ]
    block = _refine(labels, children)
    return block[g.root] == block[offset + h.root]


def minimize(g: TermGraph) -> TermGraph:
    """The graph whose nodes are the distinct subtrees of the unfolding of `g`.

    Each block keeps the label (and display hint) of its first node in
    breadth-first order; the result is renumbered breadth-first from the root.
    """
    validate_graph(g).raise_if_invalid()
    g = g.normalized()
    block = _refine([label_key(n) for n in g.nodes], [n.children() for n in g.nodes])
    count = max(block) + 1
    representative: List[int] = [-1] * count
    for node, b in enumerate(block):
        if representative[b] < 0:
            representative[b] = node
    nodes = tuple(
        with_children(g.nodes[rep], tuple(block[c] for c in g.children(rep)))
        for rep in representative
    )
    result = TermGraph(nodes=nodes, root=block[g.root], context=g.context).normalized()
    logger.debug("minimized %d node(s) to %d", len(g.nodes), len(result.nodes))
    return result


def subtree_count(g: TermGraph) -> int:
    """Number of distinct subtrees of the unfolding of `g`, up to alpha."""
    return len(minimize(g).nodes)


def cuts_agree(g: TermGraph, h: TermGraph, k: int) -> bool:
    """Whether unfold(g, k) and unfold(h, k) are alpha-equivalent.

    Works level by level on the node pairs reachable from the two roots, so
    cuts that would be exponentially large are never built.
    """
    if k < 0:
        raise ValueError(f"cut depth must be non-negative, got {k}")
    _check_contexts(g, h)
    validate_graph(g).raise_if_invalid()
    validate_graph(h).raise_if_invalid()

    start = (g.root, h.root)
    pairs: List[Tuple[int, int]] = [start]
    seen: Set[Tuple[int, int]] = {start}
    successors: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = {}
    matches: Dict[Tuple[int, int], bool] = {}
    i = 0
    while i < len(pairs):
        a, b = pairs[i]
        i += 1
        same = label_key(g.nodes[a]) == label_key(h.nodes[b])
        matches[(a, b)] = same
        successors[(a, b)] = tuple(zip(g.children(a), h.children(b))) if same else ()
        for nxt in successors[(a, b)]:
            if nxt not in seen:
                seen.add(nxt)
                pairs.append(nxt)

    # agree[p] answers the question for the current depth budget
    agree = {p: True for p in pairs}
    for _ in range(k):
        step = {
            p: matches[p] and all(agree[c] for c in successors[p])
            for p in pairs
        }
        if step == agree:
            break
        agree = step
    return agree[start]
