"""
Scheme file parser.

    # comment to end of line
    signature { s/2 ; o/1 }          optional
    context { y ; z }                optional
    nonterminals { p1 ; p2 }         optional; when absent, left-hand sides declare
    p1 = p1 @ (\\x. p2)               one rule per line
    q [x z] = x @ z                  scoped nonterminal over the context plus x, z

Items inside a block are separated by `;` or newlines.
"""

import logging
from typing import Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer, Tree
from lark.exceptions import UnexpectedInput

from ..errors import SchemeError, TermSyntaxError
from ..term_core.parser import TERM_RULES, TERMINALS, TermBuilder, syntax_error
from ..term_core.types import Context, Signature
from .types import RecursionScheme, make_scheme

logger = logging.getLogger(__name__)

SCHEME_GRAMMAR = r"""
start: (_NL | block _NL | rule _NL)*

block: NAME "{" (arity_item | name_item | ";" | _NL)* "}"
arity_item: NAME "/" INT
name_item: NAME

rule: NAME "=" term
    | NAME "[" NAME* "]" "=" term -> scoped_rule
""" + TERM_RULES + TERMINALS + r"""
COMMENT: /#[^\n]*/
_NL: /\r?\n/

%import common.INT
%import common.WS_INLINE
%ignore WS_INLINE
%ignore COMMENT
"""

_PARSER = Lark(SCHEME_GRAMMAR, start="start", parser="lalr")

BLOCKS = ("signature", "context", "nonterminals")


class _Declarations(Transformer):
    """Blocks and rules of a parse tree; rule bodies stay as term trees."""

    def arity_item(self, children):
        name, arity = children
        return name, int(arity)

    def name_item(self, children):
        return children[0], None

    def block(self, children):
        kind, *items = children
        return "block", kind, items

    def rule(self, children):
        name, body = children
        return "rule", name, (), body

    def scoped_rule(self, children):
        name, *names, body = children
        return "rule", name, tuple(names), body

    def start(self, children):
        return children


class SchemeParser:
    """Builds a RecursionScheme from the declarations of one scheme file."""

    def __init__(self, text: str):
        self.text = text if text.endswith("\n") else text + "\n"
        self.blocks: Dict[str, List[Tuple[Token, Optional[int]]]] = {}
        # (name, binders, term tree, line)
        self.rule_lines: List[Tuple[str, Tuple[str, ...], Tree, int]] = []

    def parse(self) -> RecursionScheme:
        try:
            tree = _PARSER.parse(self.text)
        except UnexpectedInput as e:
            raise syntax_error(e, self.text) from None
        self._collect(_Declarations().transform(tree))
        signature = self._signature()
        context = self._context()
        nonterminals = self._nonterminals()

        rules = {}
        binders: Dict[str, Tuple[str, ...]] = {}
        for name, names, _, line in self.rule_lines:
            if name not in nonterminals:
                raise SchemeError(f"rule for undeclared nonterminal {name!r} (line {line})")
            if name in rules:
                raise SchemeError(f"duplicate rule for nonterminal {name!r} (line {line})")
            rules[name] = None
            if len(set(names)) != len(names):
                raise SchemeError(f"repeated binder name in scope of {name!r} (line {line})")
            if names:
                binders[name] = names
        for p in nonterminals:
            if p not in rules:
                raise SchemeError(f"nonterminal {p!r} has no rule")

        for p in nonterminals:
            for q in (p,) + binders.get(p, ()):
                if q in context or q in signature:
                    raise SchemeError(f"name {q!r} is already a context variable or symbol")
        clashing = [x for names in binders.values() for x in names if x in nonterminals]
        if clashing:
            raise SchemeError(f"binder names {clashing} are also nonterminals")

        for name, names, body, _ in self.rule_lines:
            scope = context.extend(names).extend(nonterminals)
            rules[name] = TermBuilder(signature, scope).visit(body)

        scheme = make_scheme(
            signature=signature,
            context=context,
            nonterminals=tuple(nonterminals),
            rules=rules,
            binders=binders,
        )
        logger.debug("parsed scheme with %d nonterminal(s)", len(scheme.nonterminals))
        return scheme

    def _collect(self, declarations: list) -> None:
        for kind, name, *rest in declarations:
            if kind == "rule":
                names, body = rest
                self.rule_lines.append((str(name), tuple(str(x) for x in names), body, name.line))
                continue
            if name not in BLOCKS:
                raise TermSyntaxError(f"unknown block {str(name)!r}", name.line, name.column)
            if str(name) in self.blocks:
                raise SchemeError(f"duplicate {name} block (line {name.line})")
            self.blocks[str(name)] = rest[0]

    def _signature(self) -> Signature:
        symbols: Dict[str, int] = {}
        for item, arity in self.blocks.get("signature", []):
            if arity is None:
                raise TermSyntaxError(f"expected `name/arity`, found {str(item)!r}", item.line, item.column)
            if item in symbols:
                raise SchemeError(f"duplicate symbol {str(item)!r} (line {item.line})")
            symbols[str(item)] = arity
        try:
            return Signature(symbols=symbols)
        except ValueError as e:
            raise SchemeError(f"invalid signature: {e}") from e

    def _names(self, kind: str) -> Optional[List[str]]:
        if kind not in self.blocks:
            return None
        names: List[str] = []
        for item, arity in self.blocks[kind]:
            if arity is not None:
                raise TermSyntaxError(f"expected a name in {kind} block", item.line, item.column)
            if item in names:
                raise SchemeError(f"duplicate name {str(item)!r} in {kind} block (line {item.line})")
            names.append(str(item))
        return names

    def _context(self) -> Context:
        return Context(names=tuple(self._names("context") or ()))

    def _nonterminals(self) -> List[str]:
        declared = self._names("nonterminals")
        if declared is not None:
            return declared
        seen: List[str] = []
        for name, *_ in self.rule_lines:
            if name not in seen:
                seen.append(name)
        return seen


def parse_scheme(text: str) -> RecursionScheme:
    """Parse scheme file text; rule order fixes the nonterminal order."""
    return SchemeParser(text).parse()
