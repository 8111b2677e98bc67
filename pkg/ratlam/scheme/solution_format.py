"""
Text format for solution graphs, one section per nonterminal:

    [p1]
    n0 = n0 @ n1
    n1 = \\x. n2
    n2 = n3 @ n0
    n3 = y

Right-hand sides are `a @ b`, `\\hint. a`, `sym(a, b)` or a bare nullary
`sym`, a context variable, `%i` (bound variable of index i) or `_|_`. The
first node of a section is its root.
"""

from typing import Dict, List, Mapping, Tuple

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput

from ..errors import TermSyntaxError
from ..rational import (
    AbsNode, AppNode, BottomNode, BoundNode, FreeNode, NodeLabel, OpNode, TermGraph,
)
from ..term_core.parser import TERMINALS, syntax_error
from ..term_core.types import Context, Signature

SOLUTION_GRAMMAR = r"""
start: (_NL | section _NL | node _NL)*

section: "[" NAME "]"
node: NAME "=" rhs

?rhs: NAME "@" NAME -> app
    | _LAMBDA NAME "." NAME -> abs
    | NAME "(" ")" -> op
    | NAME "(" NAME ("," NAME)* ")" -> op
    | NAME -> name
    | BOUND -> bound
    | BOTTOM -> bottom
""" + TERMINALS + r"""
BOUND: /%[0-9]+/
COMMENT: /#[^\n]*/
_NL: /\r?\n/

%import common.WS_INLINE
%ignore WS_INLINE
%ignore COMMENT
"""

_PARSER = Lark(SOLUTION_GRAMMAR, start="start", parser="lalr")


class _SolutionLines(Transformer):
    """Section headers become tokens; node lines become (name, right-hand side)."""

    def section(self, children):
        return children[0]

    def node(self, children):
        name, rhs = children
        return name, rhs

    def app(self, children):
        return ("app",) + tuple(children)

    def abs(self, children):
        return ("abs",) + tuple(children)

    def op(self, children):
        symbol, *args = children
        return "op", symbol, args

    def name(self, children):
        return "name", children[0]

    def bound(self, children):
        return "bound", int(children[0][1:])

    def bottom(self, children):
        return ("bottom",)

    def start(self, children):
        return children


def _rhs(label: NodeLabel) -> str:
    if isinstance(label, AppNode):
        return f"n{label.left} @ n{label.right}"
    if isinstance(label, AbsNode):
        return f"\\{label.hint or 'x'}. n{label.body}"
    if isinstance(label, OpNode):
        if not label.args:
            return label.symbol
        return f"{label.symbol}({', '.join(f'n{a}' for a in label.args)})"
    if isinstance(label, FreeNode):
        return label.name
    if isinstance(label, BoundNode):
        return f"%{label.index}"
    return "_|_"


def write_solution(graphs: Mapping[str, TermGraph]) -> str:
    """Sections in mapping order, each graph renumbered from its root."""
    sections: List[str] = []
    for p, g in graphs.items():
        g = g.normalized()
        lines = [f"[{p}]"] + [f"n{i} = {_rhs(label)}" for i, label in enumerate(g.nodes)]
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"


def _parse_section(
    p: Token, entries: List[Tuple[Token, tuple]], sig: Signature, ctx: Context
) -> TermGraph:
    if not entries:
        raise TermSyntaxError(f"section [{p}] has no nodes", p.line, p.column)
    ids: Dict[str, int] = {}
    for name, _ in entries:
        if name in ids:
            raise TermSyntaxError(f"node {str(name)!r} defined twice in section [{p}]", name.line, name.column)
        ids[str(name)] = len(ids)

    def ref(name: Token) -> int:
        if name not in ids:
            raise TermSyntaxError(f"unknown node {str(name)!r} in section [{p}]", name.line, name.column)
        return ids[str(name)]

    nodes: List[NodeLabel] = []
    for name, (kind, *parts) in entries:
        if kind == "app":
            nodes.append(AppNode(left=ref(parts[0]), right=ref(parts[1])))
        elif kind == "abs":
            nodes.append(AbsNode(body=ref(parts[1]), hint=str(parts[0])))
        elif kind == "op":
            nodes.append(OpNode(symbol=str(parts[0]), args=tuple(ref(a) for a in parts[1])))
        elif kind == "bound":
            nodes.append(BoundNode(index=parts[0]))
        elif kind == "bottom":
            nodes.append(BottomNode())
        elif parts[0] in ctx:
            nodes.append(FreeNode(name=str(parts[0])))
        elif sig.arity(str(parts[0])) == 0:
            nodes.append(OpNode(symbol=str(parts[0])))
        else:
            raise TermSyntaxError(
                f"{str(parts[0])!r} is neither a context variable nor a nullary symbol",
                parts[0].line, parts[0].column,
            )
    return TermGraph(nodes=tuple(nodes), root=0, context=ctx)


def read_solution(text: str, sig: Signature, ctx: Context) -> Dict[str, TermGraph]:
    """Parse a solution file; graphs are over `ctx` and are not validated here."""
    text = text if text.endswith("\n") else text + "\n"
    try:
        lines = _SolutionLines().transform(_PARSER.parse(text))
    except UnexpectedInput as e:
        raise syntax_error(e, text) from None
    sections: Dict[str, Tuple[Token, List[Tuple[Token, tuple]]]] = {}
    current = None
    for item in lines:
        if isinstance(item, Token):
            if item in sections:
                raise TermSyntaxError(f"duplicate section [{item}]", item.line, item.column)
            current = str(item)
            sections[current] = (item, [])
        elif current is None:
            raise TermSyntaxError("node line before any [section]", item[0].line, 1)
        else:
            sections[current][1].append(item)
    return {p: _parse_section(header, entries, sig, ctx) for p, (header, entries) in sections.items()}
