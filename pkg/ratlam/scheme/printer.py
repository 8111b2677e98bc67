from typing import List

from ..term_core.printer import print_term
from .types import RecursionScheme


def print_scheme(s: RecursionScheme) -> str:
    """Render `s` in the scheme file format; the output re-parses to `s`."""
    lines: List[str] = []
    if s.signature.symbols:
        symbols = " ; ".join(f"{name}/{arity}" for name, arity in s.signature.symbols.items())
        lines.append(f"signature {{ {symbols} }}")
    if s.context.names:
        lines.append(f"context {{ {' ; '.join(s.context.names)} }}")
    for p in s.nonterminals:
        head = f"{p} [{' '.join(s.scope(p))}]" if s.is_scoped(p) else p
        lines.append(f"{head} = {print_term(s.rules[p], s.rule_context(p))}")
    return "\n".join(lines) + "\n"
