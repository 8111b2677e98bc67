from dataclasses import dataclass, field
import re
from typing import Dict, Iterable, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator

RESERVED_TOKENS = ("@", "\\", "_|_")
IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class Signature(BaseModel):
    """Finitary signature: operation symbol name -> arity."""
    model_config = ConfigDict(frozen=True)

    symbols: Dict[str, int] = {}

    @field_validator('symbols')
    def validate_symbols(cls, v):
        for name, arity in v.items():
            if name in RESERVED_TOKENS or not IDENTIFIER.match(name):
                raise ValueError(f"invalid symbol name: {name!r}")
            if arity < 0:
                raise ValueError(f"symbol {name!r} has negative arity {arity}")
        return v

    def arity(self, name: str) -> Optional[int]:
        return self.symbols.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.symbols

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.symbols.items())))


class Context(BaseModel):
    """Ordered context of free-variable names.

    The order fixes the coordinate order of D^Γ tables and of substitution maps.
    """
    model_config = ConfigDict(frozen=True)

    names: Tuple[str, ...] = ()

    @field_validator('names')
    def validate_names(cls, v):
        seen = set()
        for name in v:
            if name in RESERVED_TOKENS or not IDENTIFIER.match(name):
                raise ValueError(f"invalid variable name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name in context: {name!r}")
            seen.add(name)
        return v

    @classmethod
    def of(cls, *names: str) -> "Context":
        return cls(names=tuple(names))

    def extend(self, names: Iterable[str]) -> "Context":
        return Context(names=self.names + tuple(names))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)


# Finite lambda-Sigma terms. Bound variables are nameless (distance to the
# binding Abs, innermost 0); free variables stay named.

@dataclass(frozen=True)
class FreeVar:
    name: str


@dataclass(frozen=True)
class BoundVar:
    index: int


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Abs:
    body: "Term"
    hint: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True)
class Op:
    symbol: str
    args: Tuple["Term", ...] = ()


@dataclass(frozen=True)
class Bottom:
    pass


Term = Union[FreeVar, BoundVar, App, Abs, Op, Bottom]

BOTTOM = Bottom()
