"""Build groups from expression text or generator lists and summarize them."""

import logging
from typing import Optional, Union

from ..construct import ConstructedGroup, build
from ..dsl import parse_expression
from ..errors import UsageError
from ..expr import Action, prime_factorization_text
from ..group import PermGroup
from ..hall import verify_sylow_system
from ..models import GroupSummary
from ..perm import parse_generator_list

logger = logging.getLogger(__name__)

GroupInput = Union[ConstructedGroup, PermGroup]


def is_generator_list(text: str) -> bool:
    return text.strip().startswith("<")


def resolve_group(text: str, action: Optional[Action] = None, verify: bool = True) -> GroupInput:
    """Group for a command argument.

    Args:
        text: Expression such as ``W(C(2,1),C(3,1))`` or a generator list
            such as ``<(1 2),(1 2 3)>``
        action: Wreath action for iterated powers
        verify: Verify the propagated Sylow system of an expression-built group

    Returns:
        A ConstructedGroup for expressions, a plain PermGroup for generator lists
    """
    if is_generator_list(text):
        gens = parse_generator_list(text)
        if not gens:
            raise UsageError("generator list is empty")
        return PermGroup(gens)
    return build(parse_expression(text), action=action, verify=verify)


def require_constructed(group: GroupInput, what: str) -> ConstructedGroup:
    if not isinstance(group, ConstructedGroup):
        raise UsageError(f"{what} needs an expression-built group with a Sylow system")
    return group


def summarize_group(group: GroupInput) -> GroupSummary:
    """Degree, exact order, primes and (for constructed groups) the Sylow check."""
    if isinstance(group, ConstructedGroup):
        perm, expression, action = group.group, group.label, group.action
        sylow = verify_sylow_system(group)
        expanded = group.expr.expand(action).text()
        if expanded == expression:
            expanded = None
    else:
        perm, expression, action, sylow = group, f"<{len(group.generators)} generators>", "-", None
        expanded = None
    return GroupSummary(
        expression=expression,
        action=action,
        degree=perm.degree,
        order=perm.order,
        order_factored=prime_factorization_text(perm.order, set(perm.primes)),
        primes=list(perm.primes),
        weight=perm.weight,
        generators=len(perm.generators),
        expanded=expanded,
        sylow=sylow,
    )


def format_summary(summary: GroupSummary) -> str:
    """Format a group summary as text.

    Args:
        summary: Summary from summarize_group

    Returns:
        Formatted string
    """
    lines = [
        f"# {summary.expression}",
        "",
        f"Action: {summary.action}",
        f"Degree: {summary.degree}",
        f"Order: {summary.order_factored} = {summary.order}",
        f"Primes: {{{','.join(map(str, summary.primes))}}} (w = {summary.weight})",
        f"Generators: {summary.generators}",
    ]
    if summary.expanded is not None:
        lines.append(f"Expanded: {summary.expanded}")
    if summary.sylow is not None:
        if summary.sylow.passed:
            lines.append(f"Sylow system: verified ({len(summary.sylow.checks)} checks)")
        else:
            lines.append("Sylow system: FAILED")
            lines.extend(f"  - {failure}" for failure in summary.sylow.failures())
    return "\n".join(lines)
