"""Shared fixtures."""

import os
from pathlib import Path

import pytest

from fitlen.catalog import CatalogLoader
from fitlen.config import reset_config

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_addoption(parser):
    parser.addoption(
        "--run-extended",
        action="store_true",
        default=False,
        help="run group-level checks that need the extended degree budget",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended"):
        return
    skip = pytest.mark.skip(reason="needs --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Default configuration, unaffected by FITLEN_* variables of the caller."""
    for name in list(os.environ):
        if name.startswith("FITLEN_"):
            monkeypatch.delenv(name)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def catalog_path():
    """Path to the test-group catalog."""
    return FIXTURES / "catalog.yaml"


@pytest.fixture
def catalog(catalog_path):
    return CatalogLoader(catalog_path)
