"""
Base operation class for all operation plugins.
"""

from abc import ABC, abstractmethod
from typing import Callable, Tuple

from ...errors import ModelError
from ...term_core.types import Context
from ..tower import Model
from ..types import ContextMap, OperationSpec, points


class BaseOperation(ABC):
    """Base class for all operation plugins."""

    def __init__(self, model: Model):
        self.model = model

    @property
    @abstractmethod
    def name(self) -> str:
        """The keyword this plugin handles in an ops file."""
        pass

    @property
    def description(self) -> str:
        return self.__class__.__doc__ or self.name

    @abstractmethod
    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        """Build the table of `spec.symbol` over D^arity."""
        pass

    def _arity_context(self, arity: int) -> Context:
        return Context(names=tuple(f"a{i}" for i in range(arity)))

    def _tabulate(self, arity: int, fn: Callable[[Tuple[int, ...]], int]) -> ContextMap:
        values = tuple(fn(args) for args in points(self.model.size, arity))
        return ContextMap(context=self._arity_context(arity), size=self.model.size, values=values)

    def _require_arity(self, spec: OperationSpec, arity: int, expected: int) -> None:
        if arity != expected:
            raise ModelError(
                f"`{self.name}` needs arity {expected}, but {spec.symbol!r} has arity {arity} (line {spec.line})"
            )
