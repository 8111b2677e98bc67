"""
ratlam - rational lambda-Sigma terms and higher-order recursion schemes.

This package provides:
- term_core: finite terms in context with nameless bound variables
- rational: rational terms as cyclic term graphs, bisimulation and flat systems
- scheme: recursion schemes, flattening and their unique uninterpreted solutions
- cpo: finite tower models and least interpreted solutions
- cli: the `ratlam` command line
"""

__version__ = "0.1.0"

from .errors import RatlamError
from .term_core import Signature, Context, parse_term, print_term
from .rational import TermGraph, bisim_eq, minimize, unfold, to_dot
from .scheme import RecursionScheme, parse_scheme, solve, verify_solution, flatten
from .cpo import Model, build_tower, interpret, solve_interpreted, check_interpreted

__all__ = [
    "RatlamError",
    "Signature", "Context", "parse_term", "print_term",
    "TermGraph", "bisim_eq", "minimize", "unfold", "to_dot",
    "RecursionScheme", "parse_scheme", "solve", "verify_solution", "flatten",
    "Model", "build_tower", "interpret", "solve_interpreted", "check_interpreted",

    # Version info
    "__version__",
]
