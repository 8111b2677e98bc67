"""
Finite CPO models of the lambda calculus with operations: the function-space
tower, interpretation of finite terms, the substitution monoid on context
maps and least interpreted solutions of recursion schemes.
"""

from .types import (
    FinitePoset, PointwisePoset, MonotoneTable, ContextMap, Classification, OperationSpec,
)
from .tower import Model, build_tower, enumerate_monotone, app, poset_height
from .semantics import (
    interpret, interpret_in_D, mult, projection, constant_map, leq_maps, join_maps, is_monotone_map,
)
from .operation_registry import OperationRegistry
from .ops_file import OpsFile, parse_ops, parse_model_spec, make_model, load_model
from .fixpoint import (
    phi, solve_interpreted, check_interpreted, bottom_candidate, nonterminal_context,
    ApproximationEntry, ApproximationReport, approximation_report,
)

__all__ = [
    'FinitePoset', 'PointwisePoset', 'MonotoneTable', 'ContextMap', 'Classification', 'OperationSpec',
    'Model', 'build_tower', 'enumerate_monotone', 'app', 'poset_height',
    'interpret', 'interpret_in_D', 'mult', 'projection', 'constant_map',
    'leq_maps', 'join_maps', 'is_monotone_map',
    'OperationRegistry',
    'OpsFile', 'parse_ops', 'parse_model_spec', 'make_model', 'load_model',
    'phi', 'solve_interpreted', 'check_interpreted', 'bottom_candidate', 'nonterminal_context',
    'ApproximationEntry', 'ApproximationReport', 'approximation_report',
]
