import copy
import json
import os
from typing import Dict, Any, Optional

from dotenv import load_dotenv

# Default configuration
DEFAULT_CONFIG = {
    "rational": {
        "dot_graph_name": "term",
    },
    "scheme": {
        "inline_aliases": False,
    },
    "cpo": {
        "default_tower_height": 2,
        "max_tower_height": 3,
        "base_chain": 2,
        "cell_budget": 1_000_000,
        "enabled_operations": ["join", "meet", "bot", "id", "table"],
    },
    "cli": {
        "default_depth": 8,
    },
    "global": {
        "log_level": "WARNING",
    },
}

REQUIRED_SECTIONS = ["rational", "scheme", "cpo", "cli", "global"]


def load_config(filepath: Optional[str] = None, config_dict: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Load configuration from file or dict, merging with defaults.

    `.env` is read first; `RATLAM_CONFIG` supplies a file when `filepath` is
    not given and `RATLAM_LOG_LEVEL` overrides `global.log_level`.

    Args:
        filepath: Path to JSON config file
        config_dict: Configuration dictionary

    Returns:
        Merged configuration dictionary
    """
    load_dotenv()
    config = copy.deepcopy(DEFAULT_CONFIG)

    filepath = filepath or os.getenv("RATLAM_CONFIG")
    if filepath:
        with open(filepath, 'r', encoding='utf-8') as f:
            file_config = json.load(f)
        _deep_merge(config, file_config)

    if config_dict:
        _deep_merge(config, config_dict)

    env_level = os.getenv("RATLAM_LOG_LEVEL")
    if env_level:
        config["global"]["log_level"] = env_level

    return config


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> None:
    """Recursively merge update dict into base dict."""
    for key, value in update.items():
        if key in base and isinstance(base[key], dict) and isinstance(value, dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value


def get_module_config(config: Dict[str, Any], module_name: str) -> Dict[str, Any]:
    """Get configuration for a specific module."""
    return config.get(module_name, {})


def validate_config(config: Dict[str, Any]) -> bool:
    """Basic validation of configuration."""
    for section in REQUIRED_SECTIONS:
        if section not in config:
            raise ValueError(f"Missing required configuration section: {section}")

    cpo = config["cpo"]
    if cpo.get("default_tower_height", 0) < 1:
        raise ValueError("cpo.default_tower_height must be at least 1")
    if cpo.get("max_tower_height", 0) < cpo["default_tower_height"]:
        raise ValueError("cpo.max_tower_height must not be below cpo.default_tower_height")
    if cpo.get("base_chain", 0) < 2:
        raise ValueError("cpo.base_chain must be at least 2")
    if cpo.get("cell_budget", 0) <= 0:
        raise ValueError("cpo.cell_budget must be positive")

    if config["cli"].get("default_depth", -1) < 0:
        raise ValueError("cli.default_depth must be non-negative")

    log_level = str(config["global"].get("log_level", "")).upper()
    if log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ValueError(f"global.log_level is not a logging level: {log_level!r}")

    return True
