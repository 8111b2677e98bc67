"""
Parser for the textual term grammar:

    term := lam | app
    lam  := "\\" ident+ "." term
    app  := atom ("@" atom)*                  (left-associative)
    atom := ident | ident "(" term ("," term)* ")" | "(" term ")" | "_|_"

`λ` is accepted for `\\` and `⊥` for `_|_`. Identifiers resolve to the
innermost bound name, then a context variable, then a signature symbol.

The grammar rules and terminals are shared with the scheme-file grammar.
"""

import logging
from typing import List, Optional, Tuple

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken
from lark.visitors import Interpreter

from ..errors import ArityError, ResolutionError, TermSyntaxError
from .types import Abs, App, BoundVar, Context, FreeVar, Op, Signature, Term, BOTTOM

logger = logging.getLogger(__name__)

TERM_RULES = r"""
?term: lam
     | app

lam: _LAMBDA NAME+ "." term

?app: atom
    | app "@" atom -> apply

?atom: NAME "(" ")" -> symbol
     | NAME "(" term ("," term)* ")" -> symbol
     | NAME -> name
     | BOTTOM -> bottom
     | "(" term ")"
"""

TERMINALS = r"""
_LAMBDA: "\\" | "λ"
BOTTOM.2: "_|_" | "⊥"
NAME: /[A-Za-z_][A-Za-z0-9_']*/
"""

_PARSER = Lark(
    TERM_RULES + TERMINALS + "%import common.WS\n%ignore WS\n", start="term", parser="lalr"
)


def shift(line: int, column: int, origin: Tuple[int, int]) -> Tuple[int, int]:
    """Position inside a fragment moved to where the fragment starts."""
    if line == 1:
        return origin[0], origin[1] + column - 1
    return origin[0] + line - 1, column


def syntax_error(e: UnexpectedInput, text: str, origin: Tuple[int, int] = (1, 1)) -> TermSyntaxError:
    """A TermSyntaxError for a lark failure on `text`, positioned in the enclosing file."""
    line, column = getattr(e, "line", -1), getattr(e, "column", -1)
    if isinstance(e, UnexpectedCharacters):
        message = f"unexpected character {e.char!r}"
    elif isinstance(e, UnexpectedToken) and e.token.type == "_NL":
        message = "unexpected end of line"
    elif isinstance(e, UnexpectedToken) and e.token.type != "$END":
        message = f"unexpected {e.token.value!r}"
    else:
        message = "unexpected end of input"
    if not isinstance(line, int) or not isinstance(column, int) or line < 1 or column < 1:
        lines = text.split("\n")
        line, column = len(lines), len(lines[-1]) + 1
    return TermSyntaxError(message, *shift(line, column, origin))


class TermBuilder(Interpreter):
    """Top-down walk over a parse tree producing nameless terms.

    Binders are pushed on the way down, so every name is resolved against
    the lambdas that enclose it.
    """

    def __init__(self, sig: Signature, ctx: Context, origin: Tuple[int, int] = (1, 1)):
        self.sig = sig
        self.ctx = ctx
        self.origin = origin
        self.bound: List[str] = []

    def _where(self, tok: Token) -> str:
        line, column = shift(tok.line, tok.column, self.origin)
        return f"(line {line}, column {column})"

    def lam(self, tree: Tree) -> Term:
        *names, body = tree.children
        self.bound.extend(str(n) for n in names)
        try:
            term = self.visit(body)
        finally:
            del self.bound[len(self.bound) - len(names):]
        for name in reversed(names):
            term = Abs(term, str(name))
        return term

    def apply(self, tree: Tree) -> Term:
        fun, arg = tree.children
        return App(self.visit(fun), self.visit(arg))

    def bottom(self, tree: Tree) -> Term:
        return BOTTOM

    def symbol(self, tree: Tree) -> Term:
        tok, *args = tree.children
        arity = self.sig.arity(str(tok))
        if arity is None:
            raise ResolutionError(f"unknown identifier {str(tok)!r} {self._where(tok)}")
        if len(args) != arity:
            raise ArityError(
                f"symbol {str(tok)!r} expects {arity} argument(s), got {len(args)} {self._where(tok)}"
            )
        return Op(str(tok), tuple(self.visit(a) for a in args))

    def name(self, tree: Tree) -> Term:
        tok = tree.children[0]
        name = str(tok)
        for distance, bound_name in enumerate(reversed(self.bound)):
            if bound_name == name:
                return BoundVar(distance)
        if name in self.ctx:
            return FreeVar(name)
        arity = self.sig.arity(name)
        if arity == 0:
            return Op(name, ())
        if arity is not None:
            raise ArityError(
                f"symbol {name!r} expects {arity} argument(s) and must be applied with parentheses "
                f"{self._where(tok)}"
            )
        raise ResolutionError(f"unknown identifier {name!r} {self._where(tok)}")


def parse_term(
    text: str,
    sig: Optional[Signature] = None,
    ctx: Optional[Context] = None,
    line: int = 1,
    column: int = 1,
) -> Term:
    """Parse `text` into an alpha-canonical nameless term over `ctx`.

    `line` and `column` give where `text` starts inside a larger file.
    """
    sig = sig if sig is not None else Signature()
    ctx = ctx if ctx is not None else Context()
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise syntax_error(e, text, (line, column)) from None
    term = TermBuilder(sig, ctx, (line, column)).visit(tree)
    logger.debug("parsed term %r", term)
    return term
