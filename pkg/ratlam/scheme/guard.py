import logging
from typing import Dict, Optional

from pydantic import BaseModel

from ..term_core.operations import rename
from ..term_core.types import FreeVar, Term
from .types import RecursionScheme, make_scheme

logger = logging.getLogger(__name__)


class GuardResult(BaseModel):
    """Outcome of the guardedness check; `witness` is the first bare alias."""
    guarded: bool
    witness: Optional[str] = None


def alias_target(s: RecursionScheme, p: str) -> Optional[str]:
    """The nonterminal that the rule of `p` is a bare leaf of, if any."""
    body = s.rules[p]
    if isinstance(body, FreeVar) and body.name in s.nonterminals:
        return body.name
    return None


def check_guarded(s: RecursionScheme) -> GuardResult:
    """A scheme is guarded when no rule body is a bare nonterminal."""
    for p in s.nonterminals:
        if alias_target(s, p) is not None:
            logger.info("scheme is unguarded at %r", p)
            return GuardResult(guarded=False, witness=p)
    return GuardResult(guarded=True)


def inline_aliases(s: RecursionScheme) -> RecursionScheme:
    """Replace each bare-alias body p = q by the body of q, one level deep.

    Chains longer than one step, and cycles such as p = p, stay unguarded.
    """
    rules: Dict[str, Term] = dict(s.rules)
    for p in s.nonterminals:
        q = alias_target(s, p)
        if q is None:
            continue
        gamma = {x: x for x in s.context.names + s.nonterminals}
        gamma.update(zip(s.scope(q), s.scope(p)))
        rules[p] = rename(s.rules[q], gamma, s.rule_context(q), s.rule_context(p))
        logger.debug("inlined alias %r = %r", p, q)
    return make_scheme(
        signature=s.signature,
        context=s.context,
        nonterminals=s.nonterminals,
        rules=rules,
        binders=s.binders,
    )
