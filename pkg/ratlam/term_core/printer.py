from typing import AbstractSet, List, Optional, Set

from .types import Abs, App, Bottom, BoundVar, Context, FreeVar, Op, Term, IDENTIFIER

# precedence levels of the position being printed
_TERM, _APP_LEFT, _ATOM = 0, 1, 2


def _symbols_of(t: Term) -> Set[str]:
    found: Set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Op):
            found.add(u.symbol)
            stack.extend(u.args)
        elif isinstance(u, App):
            stack.extend((u.fun, u.arg))
        elif isinstance(u, Abs):
            stack.append(u.body)
    return found


def fresh_name(hint: Optional[str], taken: AbstractSet[str]) -> str:
    """The hint when it is usable, otherwise the first free x0, x1, ..."""
    if hint and IDENTIFIER.match(hint) and hint not in taken:
        return hint
    i = 0
    while f"x{i}" in taken:
        i += 1
    return f"x{i}"


def print_term(t: Term, ctx: Context = Context()) -> str:
    """Render `t` in the parser's grammar.

    Bound names come from display hints, freshened against the context, the
    enclosing binders and the symbols used in `t`, so the output re-parses to
    an alpha-equivalent term.
    """
    reserved = set(ctx.names) | _symbols_of(t)

    def fmt(u: Term, binders: List[str], level: int) -> str:
        if isinstance(u, FreeVar):
            return u.name
        if isinstance(u, BoundVar):
            if u.index >= len(binders):
                raise ValueError(f"bound index {u.index} under {len(binders)} binder(s)")
            return binders[-1 - u.index]
        if isinstance(u, Bottom):
            return "_|_"
        if isinstance(u, Op):
            if not u.args:
                return u.symbol
            return f"{u.symbol}({', '.join(fmt(a, binders, _TERM) for a in u.args)})"
        if isinstance(u, App):
            text = f"{fmt(u.fun, binders, _APP_LEFT)} @ {fmt(u.arg, binders, _ATOM)}"
            return f"({text})" if level == _ATOM else text
        if isinstance(u, Abs):
            name = fresh_name(u.hint, reserved | set(binders))
            text = f"\\{name}. {fmt(u.body, binders + [name], _TERM)}"
            return f"({text})" if level != _TERM else text
        raise TypeError(f"not a term: {u!r}")

    return fmt(t, [], _TERM)
