"""Spike analysis of finite posets.

A spike is a pair (p, q) where q is maximal and is the only element
covering p. The weighted count of spike tops determines how far the
poset is from being realizable without surplus join-irreducibles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation
from .order import Poset


@dataclass(frozen=True)
class SpikeReport:
    """Spike inventory of a poset.

    ``boundary`` holds all spike tops, ``unique_boundary`` the tops with
    exactly one spike bottom, ``multi_boundary`` the rest, and ``alpha``
    the weighted count |unique| + 2|multi|.
    """

    spikes: tuple[tuple[int, int], ...]
    boundary: frozenset[int]
    unique_boundary: frozenset[int]
    multi_boundary: frozenset[int]
    alpha: int


def spike_report(p: Poset) -> SpikeReport:
    """Find all spikes; O(n^2) from the cover matrix."""
    maximal = p.maximal_elements()
    spikes = []
    tops: dict[int, int] = {}
    for x in range(p.n):
        ups = p.cover_rows[x]
        if ups.bit_count() == 1:
            q = ups.bit_length() - 1
            if q in maximal:
                spikes.append((x, q))
                tops[q] = tops.get(q, 0) + 1
    boundary = frozenset(tops)
    unique = frozenset(q for q, c in tops.items() if c == 1)
    multi = boundary - unique
    report = SpikeReport(
        spikes=tuple(spikes),
        boundary=boundary,
        unique_boundary=unique,
        multi_boundary=multi,
        alpha=len(unique) + 2 * len(multi),
    )
    _check_spike_invariants(p, report)
    return report


def _check_spike_invariants(p, report):
    # bottoms are distinct by construction; the top-plus-bottoms families
    # of distinct tops must not overlap either
    families = {}
    for bottom, top in report.spikes:
        families.setdefault(top, {top}).add(bottom)
    seen: set[int] = set()
    for fam in families.values():
        if seen & fam:
            raise InvariantViolation("spike families of distinct tops overlap")
        seen |= fam


def is_spike_free(p: Poset) -> bool:
    """True iff the poset has no spikes.

    Equivalent to no element having an upper segment of exactly two
    elements; both criteria are computed and compared.
    """
    by_spikes = not spike_report(p).spikes
    by_segments = all(p.rel[x].bit_count() != 2 for x in range(p.n))
    if by_spikes != by_segments:
        raise InvariantViolation("spike detection disagrees with the segment-size criterion")
    return by_spikes


def join_excess(p: Poset) -> int:
    """Minimum surplus of join-irreducibles over any lattice whose
    congruence lattice is the down-set lattice of p; equals alpha."""
    return spike_report(p).alpha


__all__ = ["SpikeReport", "is_spike_free", "join_excess", "spike_report"]
