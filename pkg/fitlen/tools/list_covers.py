"""Enumerate covers of a prime set, weighted by a group's Hall profile if given."""

from typing import Optional

from ..bounds import (
    Cover,
    canonical_cover,
    cover_bound,
    cover_properties,
    cover_weight,
    enumerate_covers,
    parse_cover,
)
from ..config import get_config
from ..hall import PrimeSet, all_subsets, hall_profile
from ..models import CoverListing, CoverRow
from .build_group import GroupInput, require_constructed


def list_covers(
    ground: Optional[str] = None,
    group: Optional[GroupInput] = None,
    t_max: Optional[int] = None,
    cover_text: Optional[str] = None,
) -> CoverListing:
    """Covers of ``ground`` (or of pi(G)) up to order t_max.

    Args:
        ground: Prime set such as ``{2,3,5}``; taken from the group if omitted
        group: Expression-built group whose Hall profile weights the covers
        t_max: Largest cover order (default: configured, else w + 1)
        cover_text: A single cover such as ``{2,3};{3,5};{2,5}`` to evaluate
            instead of enumerating

    Returns:
        One row per cover with its weight and bound when a group is given
    """
    constructed = require_constructed(group, "cover weights") if group is not None else None
    if ground is not None:
        primes = PrimeSet.parse(ground)
    elif constructed is not None:
        primes = PrimeSet(constructed.primes)
    else:
        primes = PrimeSet()
    w = len(primes)
    listing = CoverListing(ground=primes.text())

    covers: list[Cover]
    if cover_text is not None:
        covers = [parse_cover(cover_text, primes)]
    elif w > get_config().cover_ground_limit:
        covers = [c for c in [canonical_cover(primes)] if c is not None]
    else:
        top = t_max or get_config().cover_t_max or w + 1
        covers = [c for t in range(3, top + 1) for c in enumerate_covers(primes, t)]

    profile = None
    if constructed is not None:
        listing.expression = constructed.label
        profile = hall_profile(constructed, [s for s in all_subsets(constructed.primes) if s])
        listing.h_actual = profile[frozenset(constructed.primes)]

    for cover in covers:
        row = CoverRow(
            cover=cover.text(),
            t=cover.t,
            degenerate=cover.degenerate,
            problems=cover_properties(cover),
        )
        if profile is not None:
            row.theta = cover_weight(cover, profile)
            value = cover_bound(row.theta, cover.t)
            row.bound = str(value)
        listing.covers.append(row)
    return listing


def format_covers(listing: CoverListing) -> str:
    """Format a cover listing as text."""
    lines = [f"# Covers of {listing.ground}", ""]
    if listing.expression is not None:
        lines.append(f"Group: {listing.expression}, h(G) = {listing.h_actual}")
        lines.append("")
    if not listing.covers:
        lines.append("No covers (a cover needs at least three members).")
        return "\n".join(lines)
    lines.append(f"Found {len(listing.covers)} covers:")
    lines.append("")
    for row in listing.covers:
        tag = " (degenerate)" if row.degenerate else ""
        line = f"- t={row.t}{tag}: {row.cover}"
        if row.theta is not None:
            line += f"  Theta={row.theta}, (Theta-2)/(t-2)={row.bound}"
        lines.append(line)
        lines.extend(f"  ! {problem}" for problem in row.problems)
    return "\n".join(lines)
