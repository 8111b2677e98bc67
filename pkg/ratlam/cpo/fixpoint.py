"""
Least interpreted solutions of recursion schemes by Kleene iteration.

A candidate assigns every nonterminal p a table over its own context, the
global context followed by p's binders. One step Φ re-evaluates every rule
body with nonterminal leaves read from the candidate; starting from the
everywhere-bottom candidate the iterates increase until Φ(c) = c.
"""

import logging
from typing import Dict, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import ContextMismatchError, IterationLimitError, ModelError, SchemeError
from ..rational import TermGraph, unfold
from ..scheme.types import RecursionScheme
from ..term_core.types import Context
from .semantics import check_budget, constant_map, evaluate, interpret, is_monotone_map, leq_maps
from .tower import Model
from .types import Classification, ContextMap, points

logger = logging.getLogger(__name__)

Candidate = Dict[str, ContextMap]


def nonterminal_context(s: RecursionScheme, p: str) -> Context:
    return s.context.extend(s.scope(p))


def bottom_candidate(s: RecursionScheme, m: Model) -> Candidate:
    return {p: constant_map(nonterminal_context(s, p), m.size, m.bottom) for p in s.nonterminals}


def _check_candidate(s: RecursionScheme, m: Model, cand: Mapping[str, ContextMap]) -> None:
    missing = [p for p in s.nonterminals if p not in cand]
    if missing:
        raise SchemeError(f"candidate has no table for {missing}")
    for p in s.nonterminals:
        ctx = nonterminal_context(s, p)
        if cand[p].context != ctx:
            raise ContextMismatchError(
                f"table for {p!r} is over {list(cand[p].context.names)}, expected {list(ctx.names)}"
            )
        if cand[p].size != m.size:
            raise ModelError(f"table for {p!r} is over a different D")
        if not is_monotone_map(cand[p], m.poset):
            raise ModelError(f"table for {p!r} is not monotone")


def phi(s: RecursionScheme, m: Model, cand: Mapping[str, ContextMap]) -> Candidate:
    """One Kleene step: every rule body evaluated with nonterminals read from `cand`."""
    width = len(s.context)

    def leaf(q: str, full: Tuple[int, ...]) -> int:
        return cand[q].value(full[:width + len(s.scope(q))])

    result: Candidate = {}
    for p in s.nonterminals:
        ctx = nonterminal_context(s, p)
        check_budget(m, ctx)
        positions = {x: i for i, x in enumerate(ctx.names)}
        values = tuple(
            evaluate(s.rules[p], m, rho, positions, leaf=leaf) for rho in points(m.size, len(ctx))
        )
        result[p] = ContextMap(context=ctx, size=m.size, values=values)
    return result


def iteration_bound(s: RecursionScheme, m: Model) -> int:
    """Height of the candidate lattice, plus the final confirming step."""
    cells = sum(m.size ** len(nonterminal_context(s, p)) for p in s.nonterminals)
    return cells * m.poset.height_bound() + 1


def solve_interpreted(s: RecursionScheme, m: Model) -> Tuple[Candidate, int]:
    """The least interpreted solution and the number of Φ applications it took.

    No guardedness is needed: an unguarded `p = p` simply stays at bottom.
    """
    missing = [sym for sym in s.signature.symbols if sym not in m.operations]
    if missing:
        raise ModelError(f"no table for operation(s) {missing}")
    bound = iteration_bound(s, m)
    cand = bottom_candidate(s, m)
    for iterations in range(1, bound + 1):
        step = phi(s, m, cand)
        if all(step[p].values == cand[p].values for p in s.nonterminals):
            logger.info("Kleene iteration reached its fixed point after %d step(s)", iterations)
            return cand, iterations
        logger.debug("Kleene step %d changed %d table(s)", iterations,
                     sum(step[p].values != cand[p].values for p in s.nonterminals))
        cand = step
    raise IterationLimitError(f"Kleene iteration did not stabilise within {bound} steps")


def check_interpreted(s: RecursionScheme, m: Model, cand: Mapping[str, ContextMap]) -> Classification:
    """FIXED when Φ(cand) = cand, POST_FIXED when Φ(cand) ≤ cand pointwise."""
    _check_candidate(s, m, cand)
    step = phi(s, m, cand)
    if all(step[p].values == cand[p].values for p in s.nonterminals):
        return Classification.FIXED
    if all(leq_maps(step[p], cand[p], m.poset) for p in s.nonterminals):
        return Classification.POST_FIXED
    return Classification.NEITHER


class ApproximationEntry(BaseModel):
    """Interpretations of the depth-0..k cuts of one nonterminal's solution graph."""
    model_config = ConfigDict(frozen=True)

    nonterminal: str
    approximations: List[ContextMap]
    least: ContextMap
    increasing: bool
    agrees: bool


class ApproximationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    depth: int
    entries: List[ApproximationEntry]

    @property
    def agrees(self) -> bool:
        return all(e.agrees for e in self.entries)


def approximation_report(
    s: RecursionScheme,
    m: Model,
    graphs: Mapping[str, TermGraph],
    k: int,
    solution: Optional[Mapping[str, ContextMap]] = None,
) -> ApproximationReport:
    """Compare the interpreted cuts of the uninterpreted solution with the Kleene answer.

    Disagreement at depth `k` is a diagnostic, not an error: truncated towers
    only satisfy beta up to the retraction.
    """
    if k < 0:
        raise ValueError(f"depth must be non-negative, got {k}")
    if solution is None:
        solution, _ = solve_interpreted(s, m)
    entries = []
    for p, g in graphs.items():
        chain = [interpret(unfold(g, i), m, s.context) for i in range(k + 1)]
        increasing = all(leq_maps(a, b, m.poset) for a, b in zip(chain, chain[1:]))
        agrees = chain[-1].values == solution[p].values
        if not agrees:
            logger.warning("depth-%d approximation of %r differs from the least interpreted solution", k, p)
        if not increasing:
            logger.warning("approximations of %r do not increase with depth", p)
        entries.append(
            ApproximationEntry(
                nonterminal=p, approximations=chain, least=solution[p], increasing=increasing, agrees=agrees
            )
        )
    return ApproximationReport(depth=k, entries=entries)
