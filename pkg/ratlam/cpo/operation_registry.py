import logging
from typing import Dict, List, Optional, Type

from ..errors import ModelError
from .operations_plugins import BaseOperation
from .operations_plugins.lattice_operations import (
    BottomOperation, IdentityOperation, JoinOperation, MeetOperation,
)
from .operations_plugins.table_operation import TableOperation
from .semantics import is_monotone_map
from .tower import Model
from .types import ContextMap, OperationSpec

logger = logging.getLogger(__name__)


class OperationRegistry:
    """Maps ops-file keywords to the plugins that build operation tables."""

    def __init__(self, model: Model, **config):
        self.model = model
        self.config = config
        self._plugins: Dict[str, Type[BaseOperation]] = {}
        self._initialize_plugins()

    def _initialize_plugins(self):
        """Initialize the plugin map with error checking for duplicates."""
        all_plugins = [
            JoinOperation, MeetOperation, BottomOperation, IdentityOperation,
            TableOperation,
        ]

        # None enables every plugin, an empty list none of them
        enabled = self.config.get("enabled_operations", None)

        for plugin_class in all_plugins:
            name = plugin_class(self.model).name
            if enabled is not None and name not in enabled:
                continue
            if name in self._plugins:
                existing = self._plugins[name].__name__
                raise ValueError(f"Duplicate operation {name!r} found: {plugin_class.__name__} conflicts with {existing}")
            self._plugins[name] = plugin_class

    def get_plugin(self, name: str) -> Optional[Type[BaseOperation]]:
        return self._plugins.get(name)

    def available(self) -> List[str]:
        return list(self._plugins)

    def build(self, spec: OperationSpec, arity: int) -> ContextMap:
        """Build and check the table of one operation."""
        plugin_class = self.get_plugin(spec.kind)
        if plugin_class is None:
            raise ModelError(
                f"unknown or disabled operation kind {spec.kind!r} for {spec.symbol!r} "
                f"(line {spec.line}); available: {self.available()}"
            )
        table = plugin_class(self.model).build(spec, arity)
        if not is_monotone_map(table, self.model.poset):
            raise ModelError(f"table for {spec.symbol!r} is not monotone (line {spec.line})")
        logger.debug("built table for %r with %s", spec.symbol, spec.kind)
        return table
