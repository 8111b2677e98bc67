from typing import Dict, Tuple

from ...errors import ModelError
from ..types import ContextMap, OperationSpec, points
from .base_operation import BaseOperation


class TableOperation(BaseOperation):
    """Explicit table `op s { #i ... #j -> #k ; ... }` covering every input tuple."""

    @property
    def name(self) -> str:
        return "table"

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        rows: Dict[Tuple[int, ...], int] = {}
        for args, value in spec.rows:
            if any(not 0 <= d < self.model.size for d in args + (value,)):
                raise ModelError(f"row of {spec.symbol!r} names an element outside D (line {spec.line})")
            if len(args) != arity:
                raise ModelError(
                    f"row for {spec.symbol!r} has {len(args)} input(s), expected {arity} (line {spec.line})"
                )
            if args in rows:
                raise ModelError(f"row {args} of {spec.symbol!r} is given twice (line {spec.line})")
            rows[args] = value
        missing = [args for args in points(self.model.size, arity) if args not in rows]
        if missing:
            shown = " ".join(self.model.name(d) for d in missing[0]) or "()"
            raise ModelError(
                f"table for {spec.symbol!r} misses {len(missing)} input tuple(s), e.g. {shown} (line {spec.line})"
            )
        return self._tabulate(arity, lambda args: rows[args])
