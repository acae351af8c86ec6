"""Factorization harness on small groups: outcomes are recorded, not judged."""

import logging
from typing import Literal

from ..construct import ConstructedGroup
from ..errors import UsageError
from ..models import ConjectureReport
from ..oracle import check_permutable_nilpotent, check_trifactorization, enumerate_group
from ..perm import parse_generator_list
from .build_group import GroupInput

logger = logging.getLogger(__name__)

ConjectureKind = Literal["trifactorized", "permutable-nilpotent"]


def run_conjecture(
    group: GroupInput,
    subgroups: list[str],
    kind: ConjectureKind = "trifactorized",
) -> ConjectureReport:
    """Enumerate G and run the harness on three subgroups given as generator lists.

    Args:
        group: Ambient group, at most the oracle cap in order
        subgroups: Three generator lists such as ``<(1 2)>``; ``<>`` is trivial
        kind: ``trifactorized`` for G = HK = KL = LH, ``permutable-nilpotent``
            for G = N1N2N3 with pairwise permutable nilpotent factors

    Raises:
        UsageError: Unless exactly three subgroups are given
        OracleScaleError: If |G| exceeds the oracle cap
    """
    if len(subgroups) != 3:
        raise UsageError(f"expected three subgroup generator lists, got {len(subgroups)}")
    if isinstance(group, ConstructedGroup):
        perm, label = group.group, group.label
    else:
        perm, label = group, f"<{len(group.generators)} generators>"
    tiny = enumerate_group(perm)
    gens = [parse_generator_list(text, degree=perm.degree) for text in subgroups]
    for text, part in zip(subgroups, gens):
        if any(g.degree != perm.degree for g in part):
            raise UsageError(f"{text} moves points beyond the degree {perm.degree} of G")
    if kind == "trifactorized":
        return check_trifactorization(tiny, *gens, label=label)
    return check_permutable_nilpotent(tiny, *gens, label=label)


def format_conjecture(report: ConjectureReport) -> str:
    """Format a harness report as text."""
    lines = [
        f"# {report.kind} harness on {report.group} (order {report.group_order})",
        "",
        f"Hypothesis: {'holds' if report.hypothesis_holds else 'unmet'}",
    ]
    lines.extend(f"  - {note}" for note in report.hypothesis_notes)
    parts = ", ".join(f"h({name}) = {value}" for name, value in report.h_parts.items())
    lines.append(f"h(G) = {report.h_group}; {parts}")
    if report.inequality_holds is not None:
        lines.append(
            f"h(G) <= {report.inequality_rhs}: {'holds' if report.inequality_holds else 'fails'}"
        )
    if report.kegel_applies:
        lines.append(f"Nilpotent factors force G nilpotent: {'yes' if report.kegel_holds else 'NO'}")
    return "\n".join(lines)
