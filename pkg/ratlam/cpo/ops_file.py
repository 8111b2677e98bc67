"""
Model ops files:

    model tower 2              optionally `model tower 2 base 3`
    op s = join                shorthand: join, meet, bot, id
    op o { #0 -> #1 ; #1 -> #2 ; #2 -> #2 }
    op c { -> #3 }             nullary symbol

Table rows are separated by `;` or newlines and may span several lines. A `#`
not followed by a digit starts a comment. `model`, `tower`, `base` and `op`
are keywords.
"""

import logging
import re
from typing import Dict, List, Optional

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput
from pydantic import BaseModel, Field

from ..errors import ModelError, TermSyntaxError
from ..term_core.parser import syntax_error
from ..term_core.types import Signature
from .operation_registry import OperationRegistry
from .tower import Model, build_tower
from .types import ContextMap, OperationSpec

logger = logging.getLogger(__name__)

OPS_GRAMMAR = r"""
start: (_NL | model _NL | shorthand _NL | table _NL)*

model: "model" "tower" INT ("base" INT)?
shorthand: "op" NAME "=" NAME
table: "op" NAME "{" (row | ";" | _NL)* "}"
row: ELEMENT* "->" ELEMENT

NAME: /[A-Za-z_][A-Za-z0-9_']*/
ELEMENT: /#[0-9]+/
COMMENT: /#(?![0-9])[^\n]*/
_NL: /\r?\n/

%import common.INT
%import common.WS_INLINE
%ignore WS_INLINE
%ignore COMMENT
"""

_PARSER = Lark(OPS_GRAMMAR, start="start", parser="lalr")

_MODEL_SPEC = re.compile(r"^tower:([0-9]+)$")


class OpsFile(BaseModel):
    height: int
    base: Optional[int] = None
    operations: List[OperationSpec] = Field(default_factory=list)


class _OpsBuilder(Transformer):
    """Model lines become (line, height, base); op lines become OperationSpecs."""

    def model(self, children):
        height, *base = children
        return height.line, int(height), int(base[0]) if base else None

    def shorthand(self, children):
        symbol, kind = children
        return OperationSpec(symbol=str(symbol), kind=str(kind), line=symbol.line)

    def table(self, children):
        symbol, *rows = children
        return OperationSpec(symbol=str(symbol), kind="table", rows=rows, line=symbol.line)

    def row(self, children):
        *inputs, output = children
        return tuple(int(x[1:]) for x in inputs), int(output[1:])

    def start(self, children):
        return children


def parse_ops(text: str) -> OpsFile:
    text = text if text.endswith("\n") else text + "\n"
    try:
        lines = _OpsBuilder().transform(_PARSER.parse(text))
    except UnexpectedInput as e:
        raise syntax_error(e, text) from None
    height: Optional[int] = None
    base: Optional[int] = None
    operations: List[OperationSpec] = []
    for item in lines:
        if isinstance(item, OperationSpec):
            operations.append(item)
            continue
        number, found, found_base = item
        if height is not None:
            raise TermSyntaxError("duplicate model line", number, 1)
        height, base = found, found_base
    if height is None:
        raise TermSyntaxError("missing `model tower N` line", 1, 1)
    return OpsFile(height=height, base=base, operations=operations)


def parse_model_spec(text: str) -> int:
    """Height N of a `tower:N` model argument."""
    m = _MODEL_SPEC.match(text.strip())
    if m is None:
        raise ModelError(f"unknown model {text!r}; expected tower:N")
    return int(m.group(1))


def make_model(height: int, base: Optional[int] = None, **config) -> Model:
    """Tower model checked against the configured limits."""
    limit = config.get("max_tower_height", 3)
    if height > limit:
        raise ModelError(f"tower height {height} exceeds the configured maximum {limit}")
    return build_tower(
        height,
        base=base if base is not None else config.get("base_chain", 2),
        cell_budget=config.get("cell_budget", 1_000_000),
    )


def load_model(
    text: Optional[str],
    sig: Signature,
    height: Optional[int] = None,
    **config,
) -> Model:
    """Build the model described by ops-file `text` with a table for every symbol of `sig`.

    Without `text` the model has no operations; `height` defaults to the ops
    file's and must agree with it when both are given.
    """
    ops = parse_ops(text) if text is not None else None
    if ops is not None and height is not None and ops.height != height:
        raise ModelError(f"ops file describes tower {ops.height}, but tower {height} was requested")
    if height is None:
        height = ops.height if ops is not None else config.get("default_tower_height", 2)
    model = make_model(height, ops.base if ops is not None else None, **config)

    registry = OperationRegistry(model, **config)
    tables: Dict[str, ContextMap] = {}
    for spec in ops.operations if ops is not None else []:
        arity = sig.arity(spec.symbol)
        if arity is None:
            raise ModelError(f"operation {spec.symbol!r} is not in the signature (line {spec.line})")
        if spec.symbol in tables:
            raise ModelError(f"duplicate operation {spec.symbol!r} (line {spec.line})")
        tables[spec.symbol] = registry.build(spec, arity)
    missing = [s for s in sig.symbols if s not in tables]
    if missing:
        raise ModelError(f"no table for signature symbol(s) {missing}")
    logger.info("loaded model tower %d with %d operation(s)", height, len(tables))
    return model.with_operations(tables)
