"""Loader for the example catalog and for test-group catalogs."""

import logging
from pathlib import Path
from typing import Optional

import yaml
from pydantic import ValidationError

from .errors import UsageError
from .models import CatalogGroup, ExampleSpec

logger = logging.getLogger(__name__)

DEFAULT_CATALOG = Path(__file__).parent / "data" / "examples.yaml"


class CatalogLoader:
    """Loads and caches examples and groups from a YAML catalog."""

    def __init__(self, yaml_path: Path = DEFAULT_CATALOG):
        """Initialize loader.

        Args:
            yaml_path: Catalog file with an ``examples`` and/or ``groups`` list
        """
        self.yaml_path = yaml_path
        self._examples: Optional[list[ExampleSpec]] = None
        self._groups: Optional[list[CatalogGroup]] = None
        self._last_mtime: Optional[float] = None

    def _needs_reload(self) -> bool:
        if self._last_mtime is None:
            return True
        return self.yaml_path.stat().st_mtime > self._last_mtime

    def _load(self, force_reload: bool = False) -> None:
        """Read the catalog file.

        Raises:
            FileNotFoundError: If the catalog doesn't exist
            ValueError: If the YAML or an entry is invalid
        """
        if not self.yaml_path.exists():
            raise FileNotFoundError(f"Catalog file not found: {self.yaml_path}")
        if not force_reload and not self._needs_reload():
            logger.debug("Using cached catalog")
            return

        logger.info(f"Loading catalog from {self.yaml_path}")
        try:
            with open(self.yaml_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML syntax: {e}")

        if not isinstance(data, dict) or not ({"examples", "groups"} & set(data)):
            raise ValueError("Invalid catalog structure: missing 'examples' or 'groups' key")

        for key in ("examples", "groups"):
            if not isinstance(data.get(key, []), list):
                raise ValueError(f"Invalid catalog structure: '{key}' must be a list")

        try:
            self._examples = [ExampleSpec(**item) for item in data.get("examples", [])]
            self._groups = [CatalogGroup(**item) for item in data.get("groups", [])]
        except (TypeError, ValidationError) as e:
            raise ValueError(f"Invalid catalog entry in {self.yaml_path}: {e}")
        self._last_mtime = self.yaml_path.stat().st_mtime
        logger.info(f"Loaded {len(self._examples)} examples and {len(self._groups)} groups")

    def examples(self, force_reload: bool = False) -> list[ExampleSpec]:
        self._load(force_reload)
        assert self._examples is not None
        return self._examples

    def groups(
        self,
        weight: Optional[int] = None,
        tiny: Optional[bool] = None,
        force_reload: bool = False,
    ) -> list[CatalogGroup]:
        """Test groups, optionally only those of one weight or tiny flag."""
        self._load(force_reload)
        assert self._groups is not None
        groups = self._groups
        if weight is not None:
            groups = [g for g in groups if g.weight == weight]
        if tiny is not None:
            groups = [g for g in groups if g.tiny == tiny]
        return groups

    def get_example(self, example_id: str) -> ExampleSpec:
        """Example by id or alias.

        Raises:
            UsageError: For an unknown id, listing the known ones
        """
        for example in self.examples():
            if example_id == example.id or example_id in example.aliases:
                return example
        known = ", ".join(e.id for e in self.examples())
        raise UsageError(f"unknown example {example_id!r}; known examples: {known}")


_loader: Optional[CatalogLoader] = None


def get_catalog() -> CatalogLoader:
    """Loader for the bundled example catalog."""
    global _loader
    if _loader is None:
        _loader = CatalogLoader()
    return _loader
