"""Run every applicable bound on a group and wrap it in a report document."""

import logging
from typing import Any, Optional

from .. import __version__
from ..bounds import check_all
from ..config import get_config
from ..hall import PrimeSet
from ..models import ReportDocument
from .build_group import GroupInput, require_constructed, summarize_group

logger = logging.getLogger(__name__)


def config_echo(primes: Optional[tuple[int, ...]] = None, action: Optional[str] = None) -> dict[str, Any]:
    """Configuration values recorded in a report document."""
    echo = get_config().echo()
    if action is not None:
        echo["action"] = action
    if primes is not None:
        echo["primes"] = PrimeSet(primes).text()
    return echo


def run_check(
    group: GroupInput,
    t_max: Optional[int] = None,
    sweep: bool = False,
    include_cjs: Optional[bool] = None,
) -> ReportDocument:
    """Full bound report for an expression-built group.

    Args:
        group: Group with a propagated Sylow system
        t_max: Largest cover order to enumerate
        sweep: Evaluate the three-halls bound on every admissible triple
        include_cjs: Evaluate the factorized bound on complementary Hall pairs

    Returns:
        Report document; its exit code is 2 on any violation
    """
    constructed = require_constructed(group, "the bound check")
    summary = summarize_group(constructed)
    report = check_all(constructed, t_max=t_max, include_cjs=include_cjs, sweep=sweep)
    doc = ReportDocument(
        tool_version=__version__,
        command="check",
        expression=constructed.label,
        config=config_echo(constructed.primes, constructed.action),
        summary=summary,
        report=report,
    )
    if t_max is not None:
        doc.config["cover_t_max"] = t_max
    logger.info(f"Check of {constructed.label} done, exit code {doc.exit_code}")
    return doc
