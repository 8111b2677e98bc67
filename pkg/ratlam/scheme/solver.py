"""
Uninterpreted solutions of recursion schemes.

A guarded scheme is flattened, turned into a flat equation system and handed
to the rational solver; `verify_solution` checks a candidate against every
rule by graph substitution and bisimulation.
"""

import logging
from typing import Dict, Mapping

from pydantic import ValidationError

from ..errors import FlatSystemError, SchemeError, UnguardedSchemeError
from ..rational import (
    AbsOf, AppOf, BoundOf, Const, FlatSystem, OpOf, TermGraph,
    bisim_eq, graph_from_term, solve_flat_system, substitute_graph,
)
from ..term_core.operations import rename
from ..term_core.types import Abs, App, Bottom, Context, FreeVar, Op
from .flatten import flatten
from .guard import check_guarded
from .types import FlatScheme, RecursionScheme, make_scheme

logger = logging.getLogger(__name__)


def to_flat_system(fs: FlatScheme) -> FlatSystem:
    """One equation per nonterminal; binder leaves become bound-variable leaves."""
    equations = {}
    for p in fs.nonterminals:
        body = fs.rules[p]
        if isinstance(body, App):
            equations[p] = AppOf(left=body.fun.name, right=body.arg.name)
        elif isinstance(body, Abs):
            equations[p] = AbsOf(body=body.body.name, hint=body.hint)
        elif isinstance(body, Op):
            equations[p] = OpOf(symbol=body.symbol, args=tuple(a.name for a in body.args))
        elif isinstance(body, FreeVar) and body.name in fs.scope(p):
            scope = fs.scope(p)
            equations[p] = BoundOf(index=len(scope) - 1 - scope.index(body.name))
        elif isinstance(body, (FreeVar, Bottom)):
            equations[p] = Const(graph=graph_from_term(body, fs.context))
        else:
            raise SchemeError(f"rule for {p!r} is not flat")
    try:
        return FlatSystem(equations=equations, context=fs.context, signature=fs.signature)
    except ValidationError as e:
        raise FlatSystemError(str(e)) from e


def solve(s: RecursionScheme) -> Dict[str, TermGraph]:
    """The unique solution of a guarded scheme, one minimized graph per
    unscoped nonterminal."""
    guard = check_guarded(s)
    if not guard.guarded:
        raise UnguardedSchemeError(guard.witness)
    system = to_flat_system(flatten(s))
    try:
        solution = solve_flat_system(system, roots=s.entry_points())
    except FlatSystemError as e:
        raise SchemeError(f"scheme has no sound solution: {e}") from e
    logger.info("solved scheme with %d nonterminal(s)", len(s.nonterminals))
    return solution


def verify_solution(s: RecursionScheme, cand: Mapping[str, TermGraph]) -> bool:
    """Whether substituting `cand` into every rule body gives back `cand`."""
    scoped = [p for p in s.nonterminals if s.is_scoped(p)]
    if scoped:
        raise SchemeError(f"cannot verify a scheme with scoped nonterminals {scoped}")
    missing = [p for p in s.nonterminals if p not in cand]
    if missing:
        raise SchemeError(f"candidate has no graph for {missing}")

    sigma: Dict[str, TermGraph] = {
        x: graph_from_term(FreeVar(x), s.context) for x in s.context.names
    }
    sigma.update({p: cand[p] for p in s.nonterminals})
    for p in s.nonterminals:
        body = graph_from_term(s.rules[p], s.rule_context(p))
        unfolded = substitute_graph(body, sigma, target=s.context)
        if not bisim_eq(unfolded, cand[p]):
            logger.info("candidate fails the equation for %r", p)
            return False
    return True


def rename_scheme(s: RecursionScheme, gamma: Mapping[str, str], target: Context) -> RecursionScheme:
    """Move `s` along a renaming of its global context."""
    rules = {}
    for p in s.nonterminals:
        fixed = {x: x for x in s.scope(p) + s.nonterminals}
        rules[p] = rename(
            s.rules[p],
            {**gamma, **fixed},
            s.rule_context(p),
            target.extend(s.scope(p)).extend(s.nonterminals),
        )
    return make_scheme(
        type(s),
        signature=s.signature,
        context=target,
        nonterminals=s.nonterminals,
        rules=rules,
        binders=s.binders,
    )
