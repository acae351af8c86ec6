"""Toolkit configuration with YAML file and environment overrides."""

import logging
import os
import threading
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import UsageError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "FITLEN_CONFIG"
ENV_PREFIX = "FITLEN_"

WreathAction = Literal["natural", "regular"]


class ToolkitConfig(BaseModel):
    """Budgets and algorithm parameters shared by every module."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_degree: int = Field(default=4096, ge=1)
    oracle_cap: int = Field(default=20000, ge=1)
    pair_budget: int = Field(default=10_000_000, ge=1)
    action: WreathAction = "natural"
    parallel: int = Field(default=1, ge=1)
    seed: int = 0
    stationary_rounds: int = Field(default=20, ge=1)
    series_step_limit: int = Field(default=256, ge=1)
    cover_ground_limit: int = Field(default=6, ge=1, le=10)
    cover_t_max: Optional[int] = Field(default=None, ge=3)
    extended: bool = False
    include_cjs: bool = True

    def echo(self) -> dict[str, Any]:
        """Configuration values that influence computed results."""
        return {
            "action": self.action,
            "max_degree": self.max_degree,
            "oracle_cap": self.oracle_cap,
            "pair_budget": self.pair_budget,
            "seed": self.seed,
            "series_step_limit": self.series_step_limit,
            "cover_ground_limit": self.cover_ground_limit,
            "cover_t_max": self.cover_t_max if self.cover_t_max is not None else "w",
            "extended": self.extended,
        }


_lock = threading.Lock()
_config: ToolkitConfig | None = None


def _read_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(
            f"Config file not found: {path}. "
            f"Check that {CONFIG_ENV_VAR} points to a valid file."
        )
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise UsageError(f"Invalid YAML syntax in {path}: {e}")
    if not isinstance(data, dict):
        raise UsageError(f"Invalid config structure in {path}: expected a mapping")
    return data


def _env_overrides() -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for name in ToolkitConfig.model_fields:
        value = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
        if value is not None:
            overrides[name] = value
    return overrides


def load_config(path: Optional[Path] = None, **overrides: Any) -> ToolkitConfig:
    """Build a configuration from defaults, file, environment and overrides.

    Args:
        path: YAML config file; defaults to the file named by FITLEN_CONFIG
        **overrides: Explicit values (None values are ignored)

    Returns:
        Validated configuration

    Raises:
        UsageError: If any value fails validation
        FileNotFoundError: If the named config file doesn't exist
    """
    values: dict[str, Any] = {}

    if path is None and os.environ.get(CONFIG_ENV_VAR):
        path = Path(os.environ[CONFIG_ENV_VAR])
    if path is not None:
        logger.info(f"Loading configuration from {path}")
        values.update(_read_yaml(path))

    values.update(_env_overrides())
    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return ToolkitConfig(**values)
    except ValidationError as e:
        raise UsageError(f"Invalid configuration: {e}")


def get_config() -> ToolkitConfig:
    """Get or create the process-wide configuration."""
    global _config
    with _lock:
        if _config is None:
            _config = load_config()
        return _config


def configure(config: ToolkitConfig) -> ToolkitConfig:
    """Replace the process-wide configuration."""
    global _config
    with _lock:
        _config = config
    logger.debug(f"Configuration set: {config.echo()}")
    return config


def reset_config() -> None:
    """Drop the process-wide configuration; the next get_config() reloads it."""
    global _config
    with _lock:
        _config = None
