"""
Interpretation of finite terms in a tower model, and the substitution monoid
on context maps.
"""

import logging
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from ..errors import CellBudgetError, ContextMismatchError, ModelError, SubstitutionError
from ..term_core.types import Abs, App, Bottom, BoundVar, Context, FreeVar, Op, Term
from .tower import Model
from .types import ContextMap, FinitePoset, points

logger = logging.getLogger(__name__)

# value of a free leaf that is not a context coordinate, given env + locals
LeafValue = Callable[[str, Tuple[int, ...]], int]


def check_budget(m: Model, ctx: Context) -> None:
    cells = m.size ** len(ctx)
    if cells > m.cell_budget:
        raise CellBudgetError(
            f"a table over D^{len(ctx)} needs {cells} cells, above the budget of {m.cell_budget}"
        )


def evaluate(
    t: Term,
    m: Model,
    env: Tuple[int, ...],
    positions: Mapping[str, int],
    leaf: Optional[LeafValue] = None,
    allow_bottom: bool = True,
) -> int:
    """Value of `t` at one point `env` of D^ctx (`positions` maps names to coordinates)."""

    def go(u: Term, local: Tuple[int, ...]) -> int:
        if isinstance(u, FreeVar):
            if u.name in positions:
                return env[positions[u.name]]
            if leaf is None:
                raise ModelError(f"free variable {u.name!r} has no value")
            return leaf(u.name, env + local)
        if isinstance(u, BoundVar):
            return local[-1 - u.index]
        if isinstance(u, App):
            return m.app(go(u.fun, local), go(u.arg, local))
        if isinstance(u, Abs):
            return m.abstract(lambda d: go(u.body, local + (d,)))
        if isinstance(u, Op):
            table = m.operations.get(u.symbol)
            if table is None:
                raise ModelError(f"no table for operation {u.symbol!r}")
            return table.value(tuple(go(a, local) for a in u.args))
        if isinstance(u, Bottom):
            if not allow_bottom:
                raise ModelError("bottom leaf is not allowed here")
            return m.bottom
        raise TypeError(f"not a term: {u!r}")

    return go(t, ())


def interpret(t: Term, m: Model, ctx: Context = Context(), allow_bottom: bool = True) -> ContextMap:
    """The monotone table of `t` over D^ctx; bottom leaves denote bottom."""
    check_budget(m, ctx)
    positions = {x: i for i, x in enumerate(ctx.names)}
    values = tuple(
        evaluate(t, m, rho, positions, allow_bottom=allow_bottom) for rho in points(m.size, len(ctx))
    )
    logger.debug("interpreted a term over %d coordinate(s)", len(ctx))
    return ContextMap(context=ctx, size=m.size, values=values)


def interpret_in_D(c: ContextMap, m: Model) -> int:
    """Curry every coordinate of `c` into D, the last one innermost."""
    k = len(c.context)

    def go(prefix: Tuple[int, ...]) -> int:
        if len(prefix) == k:
            return c.value(prefix)
        return m.abstract(lambda d: go(prefix + (d,)))

    return go(())


def projection(ctx: Context, x: str, size: int) -> ContextMap:
    """The coordinate projection D^ctx -> D onto `x`."""
    i = ctx.index(x)
    return ContextMap(context=ctx, size=size, values=tuple(rho[i] for rho in points(size, len(ctx))))


def constant_map(ctx: Context, size: int, value: int) -> ContextMap:
    return ContextMap(context=ctx, size=size, values=(value,) * (size ** len(ctx)))


def mult(
    outer: ContextMap,
    assign: Mapping[str, ContextMap],
    target: Optional[Context] = None,
    cell_budget: Optional[int] = None,
) -> ContextMap:
    """Monoid multiplication: rho -> outer(assign(x)(rho) for x in outer's context)."""
    missing = [x for x in outer.context.names if x not in assign]
    if missing:
        raise SubstitutionError(f"assignment is not total: no map for {missing}")
    if target is None:
        images = [assign[x] for x in outer.context.names]
        target = images[0].context if images else Context()
    for x in outer.context.names:
        if assign[x].context != target:
            raise ContextMismatchError(
                f"map for {x!r} is over {list(assign[x].context.names)}, expected {list(target.names)}"
            )
        if assign[x].size != outer.size:
            raise ModelError(f"map for {x!r} is over a different D")
    cells = outer.size ** len(target)
    if cell_budget is not None and cells > cell_budget:
        raise CellBudgetError(f"a table over D^{len(target)} needs {cells} cells, above the budget of {cell_budget}")
    images = [assign[x] for x in outer.context.names]
    values = tuple(
        outer.value(tuple(a.value(rho) for a in images)) for rho in points(outer.size, len(target))
    )
    return ContextMap(context=target, size=outer.size, values=values)


def _same_shape(c: ContextMap, d: ContextMap) -> None:
    if c.context != d.context or c.size != d.size:
        raise ContextMismatchError("context maps have different shapes")


def leq_maps(c: ContextMap, d: ContextMap, poset: FinitePoset) -> bool:
    """Pointwise order on context maps."""
    _same_shape(c, d)
    return all(poset.le(a, b) for a, b in zip(c.values, d.values))


def join_maps(c: ContextMap, d: ContextMap, poset: FinitePoset) -> ContextMap:
    """Pointwise join; raises ModelError where D lacks the join."""
    _same_shape(c, d)
    values = []
    for a, b in zip(c.values, d.values):
        j = poset.join(a, b)
        if j is None:
            raise ModelError(f"#{a} and #{b} have no join")
        values.append(j)
    return ContextMap(context=c.context, size=c.size, values=tuple(values))


def is_monotone_map(c: ContextMap, poset: FinitePoset) -> bool:
    """Monotone in the product order: raising one coordinate never lowers the value."""
    above: Dict[int, Sequence[int]] = {
        a: [b for b in poset.elements() if b != a and poset.le(a, b)] for a in poset.elements()
    }
    for rho in c.points():
        v = c.value(rho)
        for i, a in enumerate(rho):
            for b in above[a]:
                if not poset.le(v, c.value(rho[:i] + (b,) + rho[i + 1:])):
                    return False
    return True
