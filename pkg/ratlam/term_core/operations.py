"""
Operations on finite terms: the renaming action, simultaneous substitution,
alpha-equivalence, cutting and the usual measurements.

All functions are pure; terms are never mutated.
"""

from typing import FrozenSet, Mapping, Optional, Set

from ..errors import ArityError, ContextMismatchError, ResolutionError, SubstitutionError
from .types import Abs, App, Bottom, BoundVar, Context, FreeVar, Op, Signature, Term, BOTTOM


def check_term(t: Term, sig: Signature, ctx: Context, allow_bottom: bool = True) -> None:
    """Raise unless `t` is well-formed over `ctx` and `sig`."""

    def walk(u: Term, binders: int) -> None:
        if isinstance(u, FreeVar):
            if u.name not in ctx:
                raise ResolutionError(f"free variable {u.name!r} is not in context {list(ctx.names)}")
        elif isinstance(u, BoundVar):
            if u.index < 0 or u.index >= binders:
                raise ResolutionError(f"bound index {u.index} under {binders} binder(s)")
        elif isinstance(u, App):
            walk(u.fun, binders)
            walk(u.arg, binders)
        elif isinstance(u, Abs):
            walk(u.body, binders + 1)
        elif isinstance(u, Op):
            arity = sig.arity(u.symbol)
            if arity is None:
                raise ResolutionError(f"unknown symbol {u.symbol!r}")
            if arity != len(u.args):
                raise ArityError(f"symbol {u.symbol!r} expects {arity} argument(s), got {len(u.args)}")
            for a in u.args:
                walk(a, binders)
        elif isinstance(u, Bottom):
            if not allow_bottom:
                raise ResolutionError("bottom leaf is not allowed here")
        else:
            raise TypeError(f"not a term: {u!r}")

    walk(t, 0)


def free_vars(t: Term) -> FrozenSet[str]:
    """Names of the FreeVar leaves of `t`."""
    found: Set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, FreeVar):
            found.add(u.name)
        elif isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
        elif isinstance(u, Abs):
            stack.append(u.body)
        elif isinstance(u, Op):
            stack.extend(u.args)
    return frozenset(found)


def rename(t: Term, gamma: Mapping[str, str], source: Context, target: Context) -> Term:
    """Relabel every free variable x of `t` to gamma[x].

    Bound structure is untouched: nameless binders cannot be captured.
    """
    for name in source.names:
        if name not in gamma:
            raise SubstitutionError(f"renaming is not total: {name!r} has no image")
        if gamma[name] not in target:
            raise SubstitutionError(f"renaming sends {name!r} to {gamma[name]!r}, outside the target context")

    def go(u: Term) -> Term:
        if isinstance(u, FreeVar):
            if u.name not in gamma:
                raise SubstitutionError(f"free variable {u.name!r} is outside the source context")
            return FreeVar(gamma[u.name])
        if isinstance(u, App):
            return App(go(u.fun), go(u.arg))
        if isinstance(u, Abs):
            return Abs(go(u.body), u.hint)
        if isinstance(u, Op):
            return Op(u.symbol, tuple(go(a) for a in u.args))
        return u

    return go(t)


def substitute(t: Term, sigma: Mapping[str, Term], source: Optional[Context] = None) -> Term:
    """Simultaneous substitution of sigma[x] for every FreeVar x.

    Inserted terms are index-closed, so no index shifting is needed at any
    insertion depth.
    """
    if source is not None:
        missing = [name for name in source.names if name not in sigma]
        if missing:
            raise SubstitutionError(f"substitution is not total: no image for {missing}")

    def go(u: Term) -> Term:
        if isinstance(u, FreeVar):
            if u.name not in sigma:
                raise SubstitutionError(f"substitution is not total: no image for {u.name!r}")
            return sigma[u.name]
        if isinstance(u, App):
            return App(go(u.fun), go(u.arg))
        if isinstance(u, Abs):
            return Abs(go(u.body), u.hint)
        if isinstance(u, Op):
            return Op(u.symbol, tuple(go(a) for a in u.args))
        return u

    return go(t)


def alpha_eq_finite(
    t: Term,
    u: Term,
    ctx_t: Optional[Context] = None,
    ctx_u: Optional[Context] = None,
) -> bool:
    """Alpha-equivalence, i.e. structural equality of the nameless forms."""
    if ctx_t is not None and ctx_u is not None and ctx_t != ctx_u:
        raise ContextMismatchError(f"contexts differ: {list(ctx_t.names)} vs {list(ctx_u.names)}")
    return t == u


def cut(t: Term, k: int) -> Term:
    """Replace every node at depth k by Bottom (the root has depth 0)."""
    if k < 0:
        raise ValueError(f"cut level must be non-negative, got {k}")
    if k == 0:
        return BOTTOM
    if isinstance(t, App):
        return App(cut(t.fun, k - 1), cut(t.arg, k - 1))
    if isinstance(t, Abs):
        return Abs(cut(t.body, k - 1), t.hint)
    if isinstance(t, Op):
        return Op(t.symbol, tuple(cut(a, k - 1) for a in t.args))
    return t


def depth(t: Term) -> int:
    """Largest node depth in `t`; a single leaf has depth 0."""
    if isinstance(t, App):
        return 1 + max(depth(t.fun), depth(t.arg))
    if isinstance(t, Abs):
        return 1 + depth(t.body)
    if isinstance(t, Op) and t.args:
        return 1 + max(depth(a) for a in t.args)
    return 0


def size(t: Term) -> int:
    """Number of nodes of `t`."""
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    if isinstance(t, Abs):
        return 1 + size(t.body)
    if isinstance(t, Op):
        return 1 + sum(size(a) for a in t.args)
    return 1
