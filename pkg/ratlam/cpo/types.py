from enum import Enum
import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..term_core.types import Context


class FinitePoset(BaseModel):
    """Finite pointed poset given by its order table; element 0 is usually bottom."""
    model_config = ConfigDict(frozen=True)

    size: int = Field(gt=0)
    leq: Tuple[Tuple[bool, ...], ...]
    bottom: int = 0

    @model_validator(mode='after')
    def validate_order(self):
        if self.order_is_computed():
            return self
        n = self.size
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise ValueError(f"order table must be {n}x{n}")
        for a in range(n):
            if not self.leq[a][a]:
                raise ValueError(f"order is not reflexive at {a}")
            for b in range(n):
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise ValueError(f"order is not antisymmetric at {a}, {b}")
                if self.leq[a][b]:
                    for c in range(n):
                        if self.leq[b][c] and not self.leq[a][c]:
                            raise ValueError(f"order is not transitive at {a}, {b}, {c}")
        if not 0 <= self.bottom < n or not all(self.leq[self.bottom]):
            raise ValueError(f"element {self.bottom} is not a least element")
        return self

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        """The n-element chain 0 < 1 < ... < n-1."""
        return cls(size=n, leq=tuple(tuple(a <= b for b in range(n)) for a in range(n)))

    def order_is_computed(self) -> bool:
        """Whether `le` is computed instead of read from `leq`."""
        return False

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def elements(self) -> range:
        return range(self.size)

    def join(self, a: int, b: int) -> Optional[int]:
        """Least upper bound of a and b, if it exists."""
        upper = [u for u in self.elements() if self.le(a, u) and self.le(b, u)]
        least = [u for u in upper if all(self.le(u, v) for v in upper)]
        return least[0] if least else None

    def meet(self, a: int, b: int) -> Optional[int]:
        """Greatest lower bound of a and b, if it exists."""
        lower = [u for u in self.elements() if self.le(u, a) and self.le(u, b)]
        greatest = [u for u in lower if all(self.le(v, u) for v in lower)]
        return greatest[0] if greatest else None

    def top(self) -> Optional[int]:
        tops = [t for t in self.elements() if all(self.le(x, t) for x in self.elements())]
        return tops[0] if tops else None

    def height(self) -> int:
        """Length (in steps) of a longest strictly increasing chain."""
        order = sorted(self.elements(), key=lambda x: sum(self.le(y, x) for y in self.elements()))
        longest = {}
        for x in order:
            longest[x] = max(
                (longest[y] + 1 for y in longest if y != x and self.le(y, x)), default=0
            )
        return max(longest.values())

    def height_bound(self) -> int:
        return self.height()


class PointwisePoset(FinitePoset):
    """Monotone maps into `cod`, each a value table, ordered pointwise.

    The order is computed on demand instead of being tabulated, so `leq`
    stays empty.
    """
    tables: Tuple[Tuple[int, ...], ...]
    cod: FinitePoset
    leq: Tuple[Tuple[bool, ...], ...] = ()

    @model_validator(mode='after')
    def validate_tables(self):
        if self.leq:
            raise ValueError("a pointwise poset computes its order; `leq` must be empty")
        if len(self.tables) != self.size:
            raise ValueError(f"{len(self.tables)} tables for {self.size} elements")
        width = len(self.tables[0])
        for table in self.tables:
            if len(table) != width:
                raise ValueError(f"table {table} does not have {width} entries")
            if any(not 0 <= v < self.cod.size for v in table):
                raise ValueError(f"table {table} leaves the codomain")
        if len(set(self.tables)) != len(self.tables):
            raise ValueError("tables repeat")
        if not 0 <= self.bottom < self.size or not all(
            self.le(self.bottom, b) for b in self.elements()
        ):
            raise ValueError(f"element {self.bottom} is not a least element")
        return self

    def order_is_computed(self) -> bool:
        return True

    def le(self, a: int, b: int) -> bool:
        return all(self.cod.le(x, y) for x, y in zip(self.tables[a], self.tables[b]))

    def height_bound(self) -> int:
        width = len(self.tables[0]) if self.tables else 0
        return width * self.cod.height_bound()


def is_monotone(values: Sequence[int], dom: FinitePoset, cod: FinitePoset) -> bool:
    return all(
        cod.le(values[x], values[y])
        for x in dom.elements() for y in dom.elements() if dom.le(x, y)
    )


class MonotoneTable(BaseModel):
    """A monotone map dom -> cod as a value table indexed by dom elements."""
    model_config = ConfigDict(frozen=True)

    dom: FinitePoset
    cod: FinitePoset
    values: Tuple[int, ...]

    @model_validator(mode='after')
    def validate_table(self):
        if len(self.values) != self.dom.size:
            raise ValueError(f"table has {len(self.values)} entries for {self.dom.size} elements")
        if any(not 0 <= v < self.cod.size for v in self.values):
            raise ValueError("table value outside the codomain")
        if not is_monotone(self.values, self.dom, self.cod):
            raise ValueError("table is not monotone")
        return self

    def __call__(self, x: int) -> int:
        return self.values[x]


class ContextMap(BaseModel):
    """A total map D^ctx -> D, tabulated over tuples in lexicographic order
    with coordinates in context order."""
    model_config = ConfigDict(frozen=True)

    context: Context = Context()
    size: int = Field(gt=0)
    values: Tuple[int, ...]

    @field_validator('values')
    def validate_values(cls, v):
        if not v:
            raise ValueError("a context map needs at least one value")
        return v

    @model_validator(mode='after')
    def validate_shape(self):
        expected = self.size ** len(self.context)
        if len(self.values) != expected:
            raise ValueError(f"table has {len(self.values)} cells, expected {expected}")
        if any(not 0 <= v < self.size for v in self.values):
            raise ValueError("table value outside D")
        return self

    def points(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.size), repeat=len(self.context))

    def position(self, rho: Sequence[int]) -> int:
        pos = 0
        for d in rho:
            pos = pos * self.size + d
        return pos

    def value(self, rho: Sequence[int]) -> int:
        return self.values[self.position(rho)]


def points(size: int, arity: int) -> List[Tuple[int, ...]]:
    """All tuples in D^arity, lexicographically."""
    return list(itertools.product(range(size), repeat=arity))


class Classification(str, Enum):
    FIXED = "fixed"
    POST_FIXED = "post_fixed"
    NEITHER = "neither"


class OperationSpec(BaseModel):
    """One `op` line of an ops file: a shorthand name or an explicit table."""
    symbol: str
    kind: str
    rows: List[Tuple[Tuple[int, ...], int]] = Field(default_factory=list)
    line: int = 0
