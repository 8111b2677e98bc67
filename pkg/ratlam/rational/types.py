from enum import Enum
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import GraphValidationError
from ..term_core.types import Context, Signature


class AppNode(BaseModel):
    """Application node: left @ right."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["app"] = "app"
    left: int
    right: int

    def children(self) -> Tuple[int, ...]:
        return (self.left, self.right)


class AbsNode(BaseModel):
    """Abstraction node; `hint` is a display name only."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["abs"] = "abs"
    body: int
    hint: Optional[str] = None

    def children(self) -> Tuple[int, ...]:
        return (self.body,)


class OpNode(BaseModel):
    """Signature operation node with ordered argument edges."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["op"] = "op"
    symbol: str
    args: Tuple[int, ...] = ()

    def children(self) -> Tuple[int, ...]:
        return self.args


class FreeNode(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["free"] = "free"
    name: str

    def children(self) -> Tuple[int, ...]:
        return ()


class BoundNode(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["bound"] = "bound"
    index: int = Field(ge=0)

    def children(self) -> Tuple[int, ...]:
        return ()


class BottomNode(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["bottom"] = "bottom"

    def children(self) -> Tuple[int, ...]:
        return ()


NodeLabel = Annotated[
    Union[AppNode, AbsNode, OpNode, FreeNode, BoundNode, BottomNode],
    Field(discriminator="kind"),
]


def label_key(label: NodeLabel) -> tuple:
    """What a node shows of itself, ignoring children and display hints."""
    if isinstance(label, OpNode):
        return ("op", label.symbol, len(label.args))
    if isinstance(label, FreeNode):
        return ("free", label.name)
    if isinstance(label, BoundNode):
        return ("bound", label.index)
    return (label.kind,)


def with_children(label: NodeLabel, children: Tuple[int, ...]) -> NodeLabel:
    """Same label with its child edges replaced."""
    if isinstance(label, AppNode):
        return AppNode(left=children[0], right=children[1])
    if isinstance(label, AbsNode):
        return AbsNode(body=children[0], hint=label.hint)
    if isinstance(label, OpNode):
        return OpNode(symbol=label.symbol, args=tuple(children))
    return label


class TermGraph(BaseModel):
    """Finite rooted, possibly cyclic, graph denoting a rational term.

    Node ids are positions in `nodes`. The constructor only checks shapes;
    `validate_graph` checks the invariants.
    """
    model_config = ConfigDict(frozen=True)

    nodes: Tuple[NodeLabel, ...]
    root: int = 0
    context: Context = Context()

    def children(self, node: int) -> Tuple[int, ...]:
        return self.nodes[node].children()

    def __len__(self) -> int:
        return len(self.nodes)

    def normalized(self) -> "TermGraph":
        """Renumber nodes in breadth-first discovery order from the root,
        children in constructor order, dropping unreachable nodes."""
        if not 0 <= self.root < len(self.nodes):
            raise GraphValidationError(f"root {self.root} is not a node")
        order: List[int] = [self.root]
        position: Dict[int, int] = {self.root: 0}
        i = 0
        while i < len(order):
            for child in self.children(order[i]):
                if not 0 <= child < len(self.nodes):
                    raise GraphValidationError(f"node {order[i]} has a dangling edge to {child}")
                if child not in position:
                    position[child] = len(order)
                    order.append(child)
            i += 1
        nodes = tuple(
            with_children(self.nodes[old], tuple(position[c] for c in self.children(old)))
            for old in order
        )
        return TermGraph(nodes=nodes, root=0, context=self.context)


class ViolationKind(str, Enum):
    BAD_ROOT = "bad_root"
    DANGLING_EDGE = "dangling_edge"
    UNREACHABLE_NODE = "unreachable_node"
    UNKNOWN_FREE_VARIABLE = "unknown_free_variable"
    ARITY_MISMATCH = "arity_mismatch"
    UNSOUND_INDEX = "unsound_index"


class Violation(BaseModel):
    """One broken invariant, with the offending node and a witness path."""
    kind: ViolationKind
    node: Optional[int] = None
    message: str
    path: List[int] = Field(default_factory=list)


class GraphReport(BaseModel):
    """Result of validating a term graph."""
    ok: bool
    violations: List[Violation] = Field(default_factory=list)

    def raise_if_invalid(self, what: str = "term graph") -> None:
        if not self.ok:
            details = "; ".join(v.message for v in self.violations)
            raise GraphValidationError(f"invalid {what}: {details}", self)


# Flat equation systems: every equation variable is one constructor applied
# to equation variables, a bound-variable leaf, or a constant graph.

class AppOf(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["app"] = "app"
    left: str
    right: str

    def references(self) -> Tuple[str, ...]:
        return (self.left, self.right)


class AbsOf(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["abs"] = "abs"
    body: str
    hint: Optional[str] = None

    def references(self) -> Tuple[str, ...]:
        return (self.body,)


class OpOf(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["op"] = "op"
    symbol: str
    args: Tuple[str, ...] = ()

    def references(self) -> Tuple[str, ...]:
        return self.args


class BoundOf(BaseModel):
    """Bound-variable leaf; sound only below enough AbsOf equations."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["bound"] = "bound"
    index: int = Field(ge=0)

    def references(self) -> Tuple[str, ...]:
        return ()


class Const(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["const"] = "const"
    graph: TermGraph

    def references(self) -> Tuple[str, ...]:
        return ()


FlatRule = Annotated[
    Union[AppOf, AbsOf, OpOf, BoundOf, Const],
    Field(discriminator="kind"),
]


class FlatSystem(BaseModel):
    """Flat equation morphism: one rule per equation variable, in order."""
    model_config = ConfigDict(frozen=True)

    equations: Dict[str, FlatRule]
    context: Context = Context()
    signature: Signature = Signature()

    @field_validator('equations')
    def validate_equations(cls, v):
        if not v:
            raise ValueError("a flat system needs at least one equation")
        return v

    @model_validator(mode='after')
    def validate_references(self):
        for var, rule in self.equations.items():
            for ref in rule.references():
                if ref not in self.equations:
                    raise ValueError(f"equation {var!r} refers to undefined variable {ref!r}")
            if isinstance(rule, OpOf):
                arity = self.signature.arity(rule.symbol)
                if arity is None or arity != len(rule.args):
                    raise ValueError(f"equation {var!r}: {rule.symbol!r} is not a symbol of arity {len(rule.args)}")
            if isinstance(rule, Const) and rule.graph.context != self.context:
                raise ValueError(f"equation {var!r}: constant graph is over a different context")
        return self
