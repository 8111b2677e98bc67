"""
Exception hierarchy for ratlam.

Every user-facing failure is a ValueError subclass so callers that only know
about ValueError keep working; the CLI turns these into exit status 1.
"""

from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from .rational.types import GraphReport


class RatlamError(ValueError):
    """Base class for all ratlam errors."""


class TermSyntaxError(RatlamError):
    """Malformed term or file text."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ResolutionError(RatlamError):
    """An identifier resolves to nothing in scope."""


class ArityError(RatlamError):
    """A signature symbol is applied to the wrong number of arguments."""


class ContextMismatchError(RatlamError):
    """Two objects that must share a context do not."""


class SubstitutionError(RatlamError):
    """A renaming or substitution map is not total or leaves its codomain."""


class GraphValidationError(RatlamError):
    """A term graph violates one of its invariants."""

    def __init__(self, message: str, report: Optional["GraphReport"] = None):
        super().__init__(message)
        self.report = report


class FlatSystemError(RatlamError):
    """A flat equation system is malformed or has no sound solution graph."""


class SchemeError(RatlamError):
    """A recursion scheme is malformed."""


class UnguardedSchemeError(SchemeError):
    """A rule body is a bare nonterminal."""

    def __init__(self, witness: str):
        super().__init__(f"scheme is unguarded at nonterminal {witness!r}")
        self.witness = witness


class ModelError(RatlamError):
    """A CPO model, its operation tables or an ops file is invalid."""


class CellBudgetError(ModelError):
    """A table over D^Γ would exceed the configured cell budget."""


class IterationLimitError(RuntimeError):
    """Kleene iteration overran its lattice-height bound (internal error)."""
