"""
Shorthand operations defined by the order of D.
"""

from ...errors import ModelError
from ..types import ContextMap, OperationSpec
from .base_operation import BaseOperation


class JoinOperation(BaseOperation):
    """Binary least upper bound."""

    @property
    def name(self) -> str:
        return "join"

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        self._require_arity(spec, arity, 2)
        poset = self.model.poset

        def join(args):
            j = poset.join(*args)
            if j is None:
                raise ModelError(f"#{args[0]} and #{args[1]} have no join (line {spec.line})")
            return j

        return self._tabulate(2, join)


class MeetOperation(BaseOperation):
    """Binary greatest lower bound."""

    @property
    def name(self) -> str:
        return "meet"

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        self._require_arity(spec, arity, 2)
        poset = self.model.poset

        def meet(args):
            m = poset.meet(*args)
            if m is None:
                raise ModelError(f"#{args[0]} and #{args[1]} have no meet (line {spec.line})")
            return m

        return self._tabulate(2, meet)


class BottomOperation(BaseOperation):
    """Constant bottom, at any arity."""

    @property
    def name(self) -> str:
        return "bot"

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        return self._tabulate(arity, lambda args: self.model.bottom)


class IdentityOperation(BaseOperation):
    """Unary identity."""

    @property
    def name(self) -> str:
        return "id"

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        self._require_arity(spec, arity, 1)
        return self._tabulate(1, lambda args: args[0])
