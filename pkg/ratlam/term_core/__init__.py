"""
Finite lambda-Sigma terms in context: nameless bound variables, named free
variables, the renaming action and simultaneous substitution.
"""

from .types import Signature, Context, Term, FreeVar, BoundVar, App, Abs, Op, Bottom, BOTTOM
from .parser import parse_term
from .printer import print_term, fresh_name
from .operations import (
    check_term, free_vars, rename, substitute, alpha_eq_finite, cut, depth, size
)

__all__ = [
    'Signature', 'Context', 'Term',
    'FreeVar', 'BoundVar', 'App', 'Abs', 'Op', 'Bottom', 'BOTTOM',
    'parse_term', 'print_term', 'fresh_name',
    'check_term', 'free_vars', 'rename', 'substitute', 'alpha_eq_finite',
    'cut', 'depth', 'size',
]
