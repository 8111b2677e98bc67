"""
The function-space tower D_0, D_1 = [D_0 -> D_0], ..., D_N with its
embedding-projection pairs, and the finite model of the lambda calculus
it yields at D = D_N.

Elements of every level are numbered in the lexicographic order of their
value tables, so `#0` is always bottom.
"""

import logging
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, SkipValidation

from ..errors import ModelError
from .types import ContextMap, FinitePoset, MonotoneTable, PointwisePoset

logger = logging.getLogger(__name__)


def monotone_tables(dom: FinitePoset, cod: FinitePoset) -> List[Tuple[int, ...]]:
    """Value tables of all monotone maps dom -> cod in lexicographic order."""
    found: List[Tuple[int, ...]] = []
    values: List[int] = []

    def extend(x: int) -> None:
        if x == dom.size:
            found.append(tuple(values))
            return
        for v in range(cod.size):
            if all(
                (not dom.le(y, x) or cod.le(values[y], v)) and (not dom.le(x, y) or cod.le(v, values[y]))
                for y in range(x)
            ):
                values.append(v)
                extend(x + 1)
                values.pop()

    extend(0)
    return found


def enumerate_monotone(dom: FinitePoset, cod: FinitePoset) -> List[MonotoneTable]:
    """All monotone maps dom -> cod, each once, sorted lexicographically."""
    return [MonotoneTable(dom=dom, cod=cod, values=v) for v in monotone_tables(dom, cod)]


def function_space(dom: FinitePoset) -> PointwisePoset:
    """The monotone self-maps of `dom`, ordered pointwise."""
    tables = tuple(monotone_tables(dom, dom))
    return PointwisePoset(size=len(tables), tables=tables, cod=dom)


def _index(level: PointwisePoset) -> Dict[Tuple[int, ...], int]:
    return {table: i for i, table in enumerate(level.tables)}


class Model(BaseModel):
    """Finite model D = D_N with fold/unfold and tables for the operations.

    `embed[n]` and `project[n]` are e_n: D_n -> D_{n+1} and j_n: D_{n+1} -> D_n
    as index arrays.
    """
    model_config = ConfigDict(frozen=True)

    height: int
    # each level is checked when it is built
    levels: Tuple[SkipValidation[FinitePoset], ...]
    embed: Tuple[Tuple[int, ...], ...]
    project: Tuple[Tuple[int, ...], ...]
    element_index: Dict[Tuple[int, ...], int]
    operations: Dict[str, ContextMap] = {}
    cell_budget: int = 1_000_000

    @property
    def poset(self) -> FinitePoset:
        return self.levels[-1]

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def bottom(self) -> int:
        return self.poset.bottom

    def table(self, d: int) -> Tuple[int, ...]:
        """Element d of D_N as a map on D_{N-1}."""
        return self.levels[-1].tables[d]

    def app(self, a: int, b: int) -> int:
        e, j = self.embed[-1], self.project[-1]
        return e[self.table(a)[j[b]]]

    def unfold(self, d: int) -> Tuple[int, ...]:
        """Element d as a monotone table D -> D."""
        return tuple(self.app(d, b) for b in range(self.size))

    def fold(self, f: Sequence[int]) -> int:
        """The element of D representing a monotone table D -> D."""
        return self.abstract(lambda d: f[d])

    def abstract(self, f: Callable[[int], int]) -> int:
        """fold of the map d -> f(d); only the points e(x), x in D_{N-1}, are used."""
        e, j = self.embed[-1], self.project[-1]
        previous = self.levels[-2].size
        return self.element_index[tuple(j[f(e[x])] for x in range(previous))]

    def name(self, d: int) -> str:
        return f"#{d}"

    def parse_element(self, text: str) -> int:
        if not text.startswith("#") or not text[1:].isdigit() or int(text[1:]) >= self.size:
            raise ModelError(f"not an element of D: {text!r} (expected #0 .. #{self.size - 1})")
        return int(text[1:])

    def with_operations(self, operations: Mapping[str, ContextMap]) -> "Model":
        return self.model_copy(update={"operations": dict(operations)})


def build_tower(height: int, base: int = 2, cell_budget: int = 1_000_000) -> Model:
    """Tower of height N over the `base`-element chain.

    e_0(d) is the constant map d and j_0(f) = f(bottom); above that
    e_{n+1}(f) = e_n . f . j_n and j_{n+1}(g) = j_n . g . e_n.
    """
    if height < 1:
        raise ModelError(f"tower height must be at least 1, got {height}")
    if base < 2:
        raise ModelError(f"base chain needs at least 2 elements, got {base}")

    levels: List[FinitePoset] = [FinitePoset.chain(base)]
    embed: List[Tuple[int, ...]] = []
    project: List[Tuple[int, ...]] = []
    index: Dict[Tuple[int, ...], int] = {}
    for n in range(height):
        lower = levels[n]
        upper = function_space(lower)
        index = _index(upper)
        if n == 0:
            e = tuple(index[(d,) * lower.size] for d in lower.elements())
            j = tuple(table[lower.bottom] for table in upper.tables)
        else:
            e_prev, j_prev = embed[n - 1], project[n - 1]
            below = levels[n - 1]
            e = tuple(
                index[tuple(e_prev[lower.tables[f][j_prev[x]]] for x in lower.elements())]
                for f in lower.elements()
            )
            lower_index = _index(lower)
            j = tuple(
                lower_index[tuple(j_prev[table[e_prev[y]]] for y in below.elements())]
                for table in upper.tables
            )
        levels.append(upper)
        embed.append(e)
        project.append(j)
        logger.debug("tower level %d has %d element(s)", n + 1, upper.size)

    model = Model(
        height=height,
        levels=tuple(levels),
        embed=tuple(embed),
        project=tuple(project),
        element_index=index,
        cell_budget=cell_budget,
    )
    logger.info("built tower of height %d: |D| = %d", height, model.size)
    return model


def app(m: Model, a: int, b: int) -> int:
    """Application in the model: unfold(a) applied to b."""
    return m.app(a, b)


def poset_height(p: FinitePoset) -> int:
    return p.height()
