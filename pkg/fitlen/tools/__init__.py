"""Command implementations shared by the CLI and the MCP server."""

from .build_group import resolve_group, summarize_group
from .check_bounds import run_check
from .conjecture import run_conjecture
from .invariants import compute_fitting, compute_hall, compute_max_hall
from .list_covers import list_covers
from .reproduce_example import reproduce_example

__all__ = [
    "resolve_group",
    "summarize_group",
    "run_check",
    "run_conjecture",
    "compute_fitting",
    "compute_hall",
    "compute_max_hall",
    "list_covers",
    "reproduce_example",
]
