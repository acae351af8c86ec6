"""Fitting length, Hall Fitting length and maximal Hall length of a group."""

from typing import Optional

from ..construct import ConstructedGroup
from ..errors import UsageError
from ..hall import PrimeSet, all_subsets, hall_fitting_length, hall_profile, max_hall_length
from ..models import InvariantResult
from ..series import derived_length, fitting_length
from .build_group import GroupInput, require_constructed


def _label(group: GroupInput) -> str:
    if isinstance(group, ConstructedGroup):
        return group.label
    return f"<{len(group.generators)} generators>"


def compute_fitting(group: GroupInput, with_derived: bool = False) -> InvariantResult:
    """h(G), optionally with d(G) as a note."""
    perm = group.group if isinstance(group, ConstructedGroup) else group
    result = InvariantResult(
        expression=_label(group), quantity="h(G)", value=fitting_length(perm, _label(group))
    )
    if with_derived:
        result.notes.append(f"d(G) = {derived_length(perm)}")
    return result


def compute_hall(group: GroupInput, sigma: str) -> InvariantResult:
    """h(G_sigma) for a prime set given as ``{2,3}``."""
    constructed = require_constructed(group, "a Hall subgroup")
    primes = PrimeSet.parse(sigma)
    value = hall_fitting_length(constructed, primes)
    result = InvariantResult(
        expression=constructed.label, quantity=f"h(G_{primes.text()})", value=value
    )
    outside = sorted(primes - set(constructed.primes))
    if outside:
        result.notes.append(f"primes {outside} do not divide |G| and are ignored")
    return result


def compute_max_hall(group: GroupInput, size: Optional[int]) -> InvariantResult:
    """Largest h(G_sigma) over sigma of the given size, with the maximizing subsets."""
    constructed = require_constructed(group, "the maximal Hall length")
    if size is None:
        raise UsageError("subset size is required")
    value = max_hall_length(constructed, size)
    result = InvariantResult(
        expression=constructed.label, quantity=f"max h(G_sigma), |sigma| = {size}", value=value
    )
    if size > 0:
        profile = hall_profile(constructed, all_subsets(constructed.primes, size))
        best = [PrimeSet(s).text() for s, v in profile.items() if v == value]
        result.notes.append(f"attained at {', '.join(best)}")
    return result


def format_invariant(result: InvariantResult) -> str:
    lines = [f"{result.quantity} = {result.value}    ({result.expression})"]
    lines.extend(f"  {note}" for note in result.notes)
    return "\n".join(lines)
