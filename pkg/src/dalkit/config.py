"""
config.py

This module provides the settings shared by the command line: node budget, k_max, worker count,
output style and log level.

Settings are layered, lowest first: the dataclass defaults, the INI file ~/.dalkitrc (or the path in
DALKIT_CONFIG), the environment variable DALKIT_NODE_BUDGET, and explicit command-line flags.

Classes:
    Settings: Effective settings.

Functions:
    config_path: Location of the INI file.
    parse_dalkitrc: INI text -> nested dictionary.
    load_settings: Defaults, file and environment merged.
"""
import logging
import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Mapping, Optional

from cbcore.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV = "DALKIT_CONFIG"
NODE_BUDGET_ENV = "DALKIT_NODE_BUDGET"
DEFAULT_CONFIG = "~/.dalkitrc"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# section -> key -> Settings field
KNOWN_KEYS = {
    "solver": {"node_budget": "node_budget", "k_max": "k_max", "jobs": "jobs"},
    "output": {"pretty": "pretty"},
    "logging": {"level": "log_level"},
}


@dataclass(frozen=True)
class Settings:
    """
    Attributes:
        node_budget (Optional[int]): Cap on solver color trials; None means unlimited.
        k_max (Optional[int]): Largest k tried by `dal`; None means max(max degree, 3).
        jobs (int): Worker processes for parallel decisions and reducibility checks.
        pretty (bool): Render aligned tables instead of documents.
        log_level (str): Level name for the root logger.
    """
    node_budget: Optional[int] = None
    k_max: Optional[int] = None
    jobs: int = 1
    pretty: bool = False
    log_level: str = "WARNING"

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Applies the overrides that are not None."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def config_path(environ: Optional[Mapping[str, str]] = None) -> str:
    environ = os.environ if environ is None else environ
    return os.path.expanduser(environ.get(CONFIG_ENV, DEFAULT_CONFIG))


def parse_dalkitrc(raw_content: Optional[str]) -> Dict[str, Dict[str, Any]]:
    """Analyzes .dalkitrc text and returns {section: {key: value}} for the known sections"""
    config: Dict[str, Dict[str, Any]] = {section: {} for section in KNOWN_KEYS}
    current_section = None
    if raw_content is not None:
        for line in raw_content.split('\n'):
            line = line.strip()
            if line.startswith('#') or line.startswith(';') or not line:
                continue
            if line.startswith('[') and line.endswith(']'):
                current_section = line[1:-1].strip().lower()
                continue
            if '=' in line and current_section:
                key, value = line.split('=', 1)
                key = key.strip().lower()
                value = value.strip()
                # Boolean converter
                if value.lower() in ('true', 'false'):
                    value = value.lower() == 'true'
                # Convert numbers
                elif value.isdigit():
                    value = int(value)
                if current_section in config:
                    config[current_section][key] = value
    return config


def read_dalkitrc(path: str) -> Optional[str]:
    try:
        with open(path, "r") as f:
            return f.read()
    except FileNotFoundError:
        return None


def _check_types(values: Dict[str, Any], source: str) -> Dict[str, Any]:
    for name, value in values.items():
        if name in ("node_budget", "k_max", "jobs"):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(name, f"{source}: {name} must be a nonnegative integer, got {value!r}")
        elif name == "pretty" and not isinstance(value, bool):
            raise ConfigError(name, f"{source}: pretty must be true or false, got {value!r}")
        elif name == "log_level":
            if str(value).upper() not in LOG_LEVELS:
                raise ConfigError(name, f"{source}: unknown log level {value!r}")
            values[name] = str(value).upper()
    return values


def load_settings(path: Optional[str] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    """
    Merges the defaults, the INI file and DALKIT_NODE_BUDGET. Unknown keys inside known sections
    are logged and skipped.

    Raises:
        ConfigError: If a value has the wrong type or DALKIT_NODE_BUDGET is not an integer.
    """
    environ = os.environ if environ is None else environ
    path = path or config_path(environ)
    parsed = parse_dalkitrc(read_dalkitrc(path))
    values: Dict[str, Any] = {}
    for section, keys in KNOWN_KEYS.items():
        for key, value in parsed[section].items():
            if key in keys:
                values[keys[key]] = value
            else:
                logger.warning("%s: ignoring unknown key %s.%s", path, section, key)
    settings = Settings(**_check_types(values, path))

    raw = environ.get(NODE_BUDGET_ENV)
    if raw is not None and raw.strip():
        if not raw.strip().isdigit():
            raise ConfigError(NODE_BUDGET_ENV, f"{NODE_BUDGET_ENV} must be a nonnegative integer, got {raw!r}")
        settings = replace(settings, node_budget=int(raw))
    logger.debug("settings: %s", settings)
    return settings
