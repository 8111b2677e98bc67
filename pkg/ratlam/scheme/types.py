from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..errors import RatlamError, SchemeError
from ..term_core.operations import check_term
from ..term_core.types import Abs, App, Bottom, Context, FreeVar, Op, Signature, Term


class RecursionScheme(BaseModel):
    """A higher-order recursion scheme p_i = f_i over a global context.

    Rule bodies are finite terms in which nonterminals occur as FreeVar
    leaves. A scoped nonterminal (non-empty `binders`) lives in the global
    context extended by its binder names, which its body uses as FreeVar
    leaves too; every reference to it must sit under exactly as many
    binders, which it takes over by position.
    """
    model_config = ConfigDict(frozen=True)

    signature: Signature = Signature()
    context: Context = Context()
    nonterminals: Tuple[str, ...]
    # nonterminal -> finite term (term_core values are plain dataclasses)
    rules: Dict[str, Any]
    binders: Dict[str, Tuple[str, ...]] = {}

    @model_validator(mode='after')
    def validate_scheme(self):
        nts = self.nonterminals
        if not nts:
            raise ValueError("a scheme needs at least one nonterminal")
        if len(set(nts)) != len(nts):
            raise ValueError(f"duplicate nonterminal in {list(nts)}")
        for p in nts:
            if p in self.context:
                raise ValueError(f"nonterminal {p!r} is also a context variable")
            if p in self.signature:
                raise ValueError(f"nonterminal {p!r} is also a signature symbol")
        for p in nts:
            if p not in self.rules:
                raise ValueError(f"nonterminal {p!r} has no rule")
        for p in self.rules:
            if p not in nts:
                raise ValueError(f"rule for undeclared nonterminal {p!r}")
        for p, names in self.binders.items():
            if p not in nts:
                raise ValueError(f"binders given for undeclared nonterminal {p!r}")
            clash = [x for x in names if x in self.context or x in nts or x in self.signature]
            if clash or len(set(names)) != len(names):
                raise ValueError(f"binder names of {p!r} clash or repeat: {list(names)}")
        for p in nts:
            try:
                check_term(self.rules[p], self.signature, self.rule_context(p))
            except RatlamError as e:
                raise ValueError(f"rule for {p!r}: {e}") from e
            self._check_scoped_references(p)
        return self

    def scope(self, p: str) -> Tuple[str, ...]:
        """Binder names of `p`; empty for an ordinary nonterminal."""
        return self.binders.get(p, ())

    def is_scoped(self, p: str) -> bool:
        return bool(self.scope(p))

    def rule_context(self, p: str) -> Context:
        """Context of the body of `p`: globals, then p's binders, then nonterminals."""
        return self.context.extend(self.scope(p)).extend(self.nonterminals)

    def entry_points(self) -> List[str]:
        """Nonterminals that denote closed terms over the global context."""
        return [p for p in self.nonterminals if not self.is_scoped(p)]

    def _check_scoped_references(self, p: str) -> None:
        # binders match by position, so only the number of enclosing lambdas counts
        def walk(u: Term, depth: int) -> None:
            if isinstance(u, FreeVar) and u.name in self.binders:
                wanted = self.scope(u.name)
                if depth != len(wanted):
                    raise ValueError(
                        f"rule for {p!r}: {u.name!r} is scoped under {len(wanted)} binder(s) "
                        f"{list(wanted)} but referenced under {depth}"
                    )
            elif isinstance(u, App):
                walk(u.fun, depth)
                walk(u.arg, depth)
            elif isinstance(u, Abs):
                walk(u.body, depth + 1)
            elif isinstance(u, Op):
                for a in u.args:
                    walk(a, depth)

        walk(self.rules[p], len(self.scope(p)))


def is_flat_body(s: RecursionScheme, p: str, body: Term) -> bool:
    """Whether `body` is one of the flat rule shapes for nonterminal `p`."""
    nts = set(s.nonterminals)

    def is_nt(u: Term) -> bool:
        return isinstance(u, FreeVar) and u.name in nts

    if isinstance(body, App):
        return is_nt(body.fun) and is_nt(body.arg)
    if isinstance(body, Abs):
        return is_nt(body.body)
    if isinstance(body, Op):
        return all(is_nt(a) for a in body.args)
    if isinstance(body, FreeVar):
        return body.name in s.context or body.name in s.scope(p)
    return isinstance(body, Bottom)


class FlatScheme(RecursionScheme):
    """Scheme whose rules are p@q, \\x. p, sigma(p, ...), a variable or bottom."""

    @model_validator(mode='after')
    def validate_flat(self):
        for p in self.nonterminals:
            if not is_flat_body(self, p, self.rules[p]):
                raise ValueError(f"rule for {p!r} is not flat")
        return self


def make_scheme(cls=RecursionScheme, **fields) -> RecursionScheme:
    """Build a scheme, reporting validation failures as SchemeError."""
    try:
        return cls(**fields)
    except ValidationError as e:
        messages = [err["msg"].removeprefix("Value error, ") for err in e.errors()]
        raise SchemeError("; ".join(messages)) from e
