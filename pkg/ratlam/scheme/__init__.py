"""
Higher-order recursion schemes: parsing, guardedness, flattening, the unique
uninterpreted solution and its verification.
"""

from .types import RecursionScheme, FlatScheme, make_scheme
from .parser import parse_scheme
from .printer import print_scheme
from .guard import GuardResult, check_guarded, inline_aliases
from .flatten import flatten
from .solver import solve, verify_solution, rename_scheme, to_flat_system
from .solution_format import read_solution, write_solution

__all__ = [
    'RecursionScheme', 'FlatScheme', 'make_scheme',
    'parse_scheme', 'print_scheme',
    'GuardResult', 'check_guarded', 'inline_aliases',
    'flatten', 'solve', 'verify_solution', 'rename_scheme', 'to_flat_system',
    'read_solution', 'write_solution',
]
