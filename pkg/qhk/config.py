"""Configuration loader for qhk runs"""

import logging
import os
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml

from .constants import Defaults, OutputFormat
from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Configuration schema: attribute name -> (config_path, default, converter)
# converter is optional - if None, returns value as-is
_CONFIG_SCHEMA: Dict[str, Tuple[str, Any, Optional[Callable]]] = {
    # Budgets
    "max_basis": ("budget.max_basis", Defaults.MAX_BASIS, int),
    "max_group_order": (
        "budget.max_group_order",
        Defaults.MAX_GROUP_ORDER,
        int,
    ),
    "isomorphism_max_size": (
        "budget.isomorphism_max_size",
        Defaults.ISOMORPHISM_MAX_SIZE,
        int,
    ),
    "isomorphism_max_nodes": (
        "budget.isomorphism_max_nodes",
        Defaults.ISOMORPHISM_MAX_NODES,
        int,
    ),
    # Computation
    "jobs": ("compute.jobs", Defaults.JOBS, int),
    # Logging settings
    "log_path": ("logging.path", None, str),
    "log_level": ("logging.level", "INFO", str),
    "log_max_size_mb": ("logging.max_size_mb", 10, int),
    "log_backup_count": ("logging.backup_count", 3, int),
    # Output
    "output_format": ("output.format", OutputFormat.TEXT.value, str),
}

_POSITIVE_FIELDS = [
    "budget.max_basis",
    "budget.max_group_order",
    "budget.isomorphism_max_size",
    "budget.isomorphism_max_nodes",
    "compute.jobs",
]


class Config:
    """Load and manage configuration from an optional YAML file"""

    def __init__(self, config_path: Optional[str] = None):
        """
        Load configuration from YAML file

        Args:
            config_path: Path to qhk.yaml, or None for built-in defaults

        Raises:
            ConfigurationError: If the given file is missing or invalid
        """
        self.config_path = config_path
        self._config: Dict[str, Any] = {}

        if config_path is not None:
            self._config = self._read(config_path)

        # Cache for computed values
        self._cache: Dict[str, Any] = {}

        self._validate_config()

    @staticmethod
    def _read(config_path: str) -> Dict[str, Any]:
        if not os.path.exists(config_path):
            error_msg = (
                f"Configuration file not found: {config_path}\n"
                f"Create one from the example:\n"
                f"  cp qhk.yaml.example qhk.yaml\n"
                f"or omit --config to run with the built-in defaults."
            )
            raise ConfigurationError(error_msg, config_key=config_path)

        try:
            with open(config_path, "r") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            error_msg = f"Invalid YAML syntax in configuration file: {e}"
            raise ConfigurationError(error_msg, config_key=config_path)
        except OSError as e:
            error_msg = f"Failed to read configuration file: {e}"
            raise ConfigurationError(error_msg, config_key=config_path)

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigurationError(
                "Top level of the configuration must be a mapping",
                config_key=config_path,
            )
        return data

    def _validate_config(self) -> None:
        """
        Validate configuration values on load.
        Logs warnings for invalid values; never fails.
        """
        config_warnings: List[str] = []

        for field in _POSITIVE_FIELDS:
            value = self.get(field)
            if value is None:
                continue
            if not isinstance(value, int) or value < 1:
                config_warnings.append(
                    f"'{field}' = {value!r} must be a positive integer"
                )

        log_level = self.get("logging.level", "INFO")
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if str(log_level).upper() not in valid_levels:
            config_warnings.append(
                f"Invalid log level '{log_level}' - "
                f"must be one of: {', '.join(sorted(valid_levels))}"
            )

        output_format = self.get("output.format", OutputFormat.TEXT.value)
        valid_formats = {f.value for f in OutputFormat}
        if output_format not in valid_formats:
            config_warnings.append(
                f"Invalid output format '{output_format}' - "
                f"must be one of: {', '.join(sorted(valid_formats))}"
            )

        for warning in config_warnings:
            logger.warning("Configuration: %s", warning)

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation

        Args:
            key_path: Dot-separated path (e.g., "budget.max_basis")
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split(".")
        value = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def __getattr__(self, name: str) -> Any:
        """
        Dynamic attribute access for configuration values.

        Values come from the schema, with QHK_BUDGET overriding
        budget.max_basis.
        """
        if name.startswith("_"):
            raise AttributeError(
                f"'{type(self).__name__}' has no attribute '{name}'"
            )

        if name in _CONFIG_SCHEMA:
            if name in self._cache:
                return self._cache[name]

            config_path, default, type_converter = _CONFIG_SCHEMA[name]
            value = self.get(config_path, default)
            if name == "max_basis":
                value = os.environ.get(Defaults.BUDGET_ENV_VAR, value)

            if type_converter is not None and value is not None:
                try:
                    value = type_converter(value)
                except (ValueError, TypeError):
                    logger.warning(
                        "Configuration: Failed to convert '%s' value '%s' "
                        "to %s, using default: %s",
                        name,
                        value,
                        type_converter.__name__,
                        default,
                    )
                    value = default

            self._cache[name] = value
            return value

        raise AttributeError(
            f"'{type(self).__name__}' has no attribute '{name}'"
        )

    def override(self, name: str, value: Any) -> None:
        """
        Override a schema attribute for this run (e.g. from a CLI flag).

        None leaves the configured value in place.
        """
        if name not in _CONFIG_SCHEMA:
            raise AttributeError(
                f"'{type(self).__name__}' has no attribute '{name}'"
            )
        if value is not None:
            self._cache[name] = value

    def __repr__(self) -> str:
        return (
            f"Config(path={self.config_path}, max_basis={self.max_basis}, "
            f"jobs={self.jobs})"
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        Export all configuration values as a dictionary.

        Returns:
            Dictionary of all configuration values
        """
        return {name: getattr(self, name) for name in _CONFIG_SCHEMA}
