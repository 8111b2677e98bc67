"""
Flattening: every composite subterm of every rule gets a rule of its own.

A subterm sitting under lambdas of its rule becomes a scoped nonterminal
whose binders are the enclosing binder names, so bound variables turn into
ordinary leaves of the new rule. Fresh nonterminals are `_t0`, `_t1`, ... in
the order they are created (pre-order, rule by rule).
"""

import logging
from typing import Dict, List, Set, Tuple

from ..errors import UnguardedSchemeError
from ..term_core.printer import fresh_name
from ..term_core.types import Abs, App, Bottom, BoundVar, FreeVar, Op, Term
from .guard import check_guarded
from .types import FlatScheme, RecursionScheme, make_scheme

logger = logging.getLogger(__name__)


def _instantiate(t: Term, name: str, depth: int = 0) -> Term:
    """Replace the bound variable of the lambda just above `t` by FreeVar(name)."""
    if isinstance(t, BoundVar):
        return FreeVar(name) if t.index == depth else t
    if isinstance(t, App):
        return App(_instantiate(t.fun, name, depth), _instantiate(t.arg, name, depth))
    if isinstance(t, Abs):
        return Abs(_instantiate(t.body, name, depth + 1), t.hint)
    if isinstance(t, Op):
        return Op(t.symbol, tuple(_instantiate(a, name, depth) for a in t.args))
    return t


class Flattener:
    """Accumulates flat rules while walking the rules of a guarded scheme."""

    def __init__(self, s: RecursionScheme):
        self.s = s
        self.nonterminals: List[str] = list(s.nonterminals)
        self.rules: Dict[str, Term] = {}
        self.binders: Dict[str, Tuple[str, ...]] = dict(s.binders)
        self.taken: Set[str] = set(s.nonterminals) | set(s.context.names) | set(s.signature.symbols)
        self.binder_names: Set[str] = {x for names in s.binders.values() for x in names}
        self.counter = 0

    def fresh_nonterminal(self) -> str:
        while f"_t{self.counter}" in self.taken or f"_t{self.counter}" in self.binder_names:
            self.counter += 1
        name = f"_t{self.counter}"
        self.counter += 1
        self.taken.add(name)
        self.nonterminals.append(name)
        return name

    def run(self) -> FlatScheme:
        for p in self.s.nonterminals:
            self.rules[p] = self.body(self.s.rules[p], self.s.scope(p))
        logger.debug("flattening added %d nonterminal(s)", len(self.nonterminals) - len(self.s.nonterminals))
        return make_scheme(
            FlatScheme,
            signature=self.s.signature,
            context=self.s.context,
            nonterminals=tuple(self.nonterminals),
            rules=self.rules,
            binders=self.binders,
        )

    def body(self, t: Term, chain: Tuple[str, ...]) -> Term:
        """Flat rule body for `t`, a rule body over `chain`."""
        if isinstance(t, App):
            return App(self.child(t.fun, chain), self.child(t.arg, chain))
        if isinstance(t, Abs):
            name = fresh_name(t.hint, self.taken | set(chain))
            self.binder_names.add(name)
            inner = _instantiate(t.body, name)
            return Abs(self.child(inner, chain + (name,)), name)
        if isinstance(t, Op):
            return Op(t.symbol, tuple(self.child(a, chain) for a in t.args))
        return t

    def child(self, t: Term, chain: Tuple[str, ...]) -> FreeVar:
        """Nonterminal standing for `t` at a position under `chain`."""
        if isinstance(t, FreeVar) and t.name in self.s.nonterminals:
            return t
        q = self.fresh_nonterminal()
        closed = isinstance(t, Bottom) or (isinstance(t, FreeVar) and t.name in self.s.context)
        if not closed and chain:
            self.binders[q] = chain
        self.rules[q] = self.body(t, () if closed else chain)
        return FreeVar(q)


def flatten(s: RecursionScheme) -> FlatScheme:
    """Flat scheme with the same solutions on the original nonterminals."""
    result = check_guarded(s)
    if not result.guarded:
        raise UnguardedSchemeError(result.witness)
    return Flattener(s).run()
