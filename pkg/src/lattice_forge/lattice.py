"""Finite lattices: validated posets with materialized join/meet tables.

Also builds the three lattice families everything downstream consumes:
lattices of arbitrary posets (by bound search), lattices of down-closed
subsets, and containment lattices of intersection-closed set families.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ._bits import bit, bits, full_mask, mask_of
from .errors import MissingTop, NotALattice, NotIntersectionClosed, SizeCapExceeded
from .order import Poset

HEREDITARY_CAP = 20
CLOSURE_SYSTEM_CAP = 1 << 20


@dataclass(frozen=True)
class JoinIrreducibleInfo:
    """A join-irreducible element together with its unique lower cover."""

    element: int
    lower_cover: int


class FiniteLattice:
    """A finite lattice over an explicit poset.

    ``join`` and ``meet`` are full n-by-n index tables, filled eagerly at
    construction; all downstream algorithms are table-lookup bound.
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, order: Poset, join, meet, bottom: int, top: int):
        self.order = order
        self.join = tuple(join)
        self.meet = tuple(meet)
        self.bottom = bottom
        self.top = top
        n = order.n
        if len(self.join) != n or len(self.meet) != n:
            raise ValueError("join/meet tables must have one row per element")

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def labels(self):
        return self.order.labels

    def le(self, i: int, j: int) -> bool:
        return self.order.le(i, j)

    def join_of(self, items) -> int:
        acc = self.bottom
        for x in items:
            acc = self.join[acc][x]
        return acc

    def meet_of(self, items) -> int:
        acc = self.top
        for x in items:
            acc = self.meet[acc][x]
        return acc

    @cached_property
    def join_irreducibles(self) -> tuple[JoinIrreducibleInfo, ...]:
        """Elements with exactly one lower cover; the bottom is excluded."""
        out = []
        for p in range(self.n):
            low = self.order.cover_cols[p]
            if low.bit_count() == 1:
                out.append(JoinIrreducibleInfo(p, low.bit_length() - 1))
        return tuple(out)

    @cached_property
    def atoms(self) -> frozenset[int]:
        return frozenset(bits(self.order.cover_rows[self.bottom])) if self.n else frozenset()

    @cached_property
    def is_atomistic(self) -> bool:
        """Every element is the join of the atoms below it."""
        atom_list = sorted(self.atoms)
        for x in range(self.n):
            acc = self.bottom
            for a in atom_list:
                if self.le(a, x):
                    acc = self.join[acc][a]
            if acc != x:
                return False
        return True

    @cached_property
    def is_sectionally_complemented(self) -> bool:
        """Every a <= b has a c with a meet c = bottom and a join c = b."""
        for b in range(self.n):
            for a in bits(self.order.down_mask(b)):
                if not any(
                    self.meet[a][c] == self.bottom and self.join[a][c] == b
                    for c in range(self.n)
                ):
                    return False
        return True

    @cached_property
    def is_distributive(self) -> bool:
        n = self.n
        join, meet = self.join, self.meet
        for a in range(n):
            ja = join[a]
            for b in range(n):
                jab = ja[b]
                mb = meet[b]
                for c in range(n):
                    if ja[mb[c]] != meet[jab][ja[c]]:
                        return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.order == other.order
            and self.join == other.join
            and self.meet == other.meet
        )

    def __hash__(self):
        return hash((self.order, self.bottom, self.top))

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"


def lattice_from_poset(p: Poset) -> FiniteLattice:
    """Validate that every pair has a join and a meet, filling the tables.

    Bounds are found by direct search over upper/lower bound sets. On
    failure the error reports the offending pair together with the
    incomparable minimal upper (or maximal lower) bounds witnessing it.
    """
    n = p.n
    if n == 0:
        raise NotALattice("empty poset has no bottom element")
    up = p.rel
    down = p._cols
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ub = up[i] & up[j]
            join[i][j] = join[j][i] = _least(p, i, j, ub, up, down, "upper")
            lb = down[i] & down[j]
            meet[i][j] = meet[j][i] = _least(p, i, j, lb, down, up, "lower")
    bottom = 0
    top = 0
    for x in range(n):
        bottom = meet[bottom][x]
        top = join[top][x]
    return FiniteLattice(p, tuple(tuple(r) for r in join), tuple(tuple(r) for r in meet), bottom, top)


def _least(p, i, j, bounds, toward, backward, side):
    la, lb = p.labels[i], p.labels[j]
    if not bounds:
        raise NotALattice(f"{la!r} and {lb!r} have no common {side} bound", pair=(la, lb))
    for m in bits(bounds):
        if not bounds & ~toward[m]:
            return m
    extremal = [m for m in bits(bounds) if backward[m] & bounds == bit(m)]
    word = "least upper" if side == "upper" else "greatest lower"
    raise NotALattice(
        f"{la!r} and {lb!r} have no {word} bound",
        pair=(la, lb),
        witnesses=tuple(p.labels[m] for m in extremal),
    )


def _subset_label(mask: int, ground_labels) -> str:
    return "{" + ",".join(str(ground_labels[i]) for i in bits(mask)) + "}"


def family_lattice(members, ground_labels, closure_fn=None, validate=True) -> FiniteLattice:
    """Containment lattice of an intersection-closed family of subsets.

    ``members`` are bitmasks over the ground set. Meets are intersections;
    the join of two members is the least member containing their union,
    resolved through ``closure_fn`` when given (callers that know the
    family's closure operator avoid the generic superset scan).
    """
    ground = tuple(ground_labels)
    full = full_mask(len(ground))
    members = sorted(set(members), key=lambda m: (m.bit_count(), m))
    if full not in members:
        raise MissingTop("the family does not contain the full ground set")
    idx = {m: k for k, m in enumerate(members)}
    if validate:
        for a in members:
            for b in members:
                if a < b and (a & b) not in idx:
                    raise NotIntersectionClosed(
                        f"intersection of {_subset_label(a, ground)} and "
                        f"{_subset_label(b, ground)} is missing",
                        pair=(a, b),
                    )
    m = len(members)
    rows = []
    for a in members:
        row = 0
        for k, b in enumerate(members):
            if not a & ~b:
                row |= bit(k)
        rows.append(row)
    labels = tuple(_subset_label(s, ground) for s in members)
    order = Poset(labels, tuple(rows), validate=False)

    meet = [[0] * m for _ in range(m)]
    join = [[0] * m for _ in range(m)]
    union_memo = {}
    for i, a in enumerate(members):
        for j in range(i, m):
            b = members[j]
            meet[i][j] = meet[j][i] = idx[a & b]
            u = a | b
            k = idx.get(u)
            if k is None:
                k = union_memo.get(u)
                if k is None:
                    if closure_fn is not None:
                        k = idx[closure_fn(u)]
                    else:
                        acc = full
                        for s in members:
                            if not u & ~s:
                                acc &= s
                        k = idx[acc]
                    union_memo[u] = k
            join[i][j] = join[j][i] = k
    return FiniteLattice(order, tuple(tuple(r) for r in join), tuple(tuple(r) for r in meet), 0, m - 1)


def hereditary_lattice(p: Poset, cap: int | None = None) -> FiniteLattice:
    """Lattice of down-closed subsets of a poset, ordered by containment.

    Enumerates all 2^n subsets, so the poset size is capped (default 20).
    """
    cap = HEREDITARY_CAP if cap is None else cap
    if p.n > cap:
        raise SizeCapExceeded(f"poset has {p.n} elements, cap is {cap}")
    return family_lattice(p.downset_masks(), p.labels, validate=False)


def closure_system_lattice(ground_size: int, closed_families, cap: int | None = None) -> FiniteLattice:
    """Containment lattice of an explicitly given closure system.

    The family must contain the full ground set and be closed under
    pairwise intersection; both are validated. Subsets are given as
    iterables of ground indices.
    """
    cap = CLOSURE_SYSTEM_CAP if cap is None else cap
    masks = []
    full = full_mask(ground_size)
    for fam in closed_families:
        m = mask_of(fam)
        if m & ~full:
            raise ValueError(f"subset {sorted(bits(m))} exceeds ground set of size {ground_size}")
        masks.append(m)
    if len(set(masks)) > cap:
        raise SizeCapExceeded(f"family has {len(set(masks))} members, cap is {cap}")
    labels = tuple(str(i) for i in range(ground_size))
    return family_lattice(masks, labels, validate=True)


__all__ = [
    "FiniteLattice",
    "JoinIrreducibleInfo",
    "closure_system_lattice",
    "family_lattice",
    "hereditary_lattice",
    "lattice_from_poset",
]
