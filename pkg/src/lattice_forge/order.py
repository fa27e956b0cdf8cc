"""Finite quasi-orders and posets over dense index sets.

Elements are referred to by indices 0..n-1 everywhere; labels are surface
syntax kept for input and output only. A relation is stored as a tuple of
row bitmasks (bit j of ``rel[i]`` set iff element i lies below element j),
so closures and scans reduce to machine-word operations.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

from ._bits import bit, bits, full_mask, is_transitive, mask_of, transpose, warshall
from .errors import CycleViolatesAntisymmetry, DuplicateLabel, UnknownLabel


def _closed_rows(labels, pairs):
    """Reflexive-transitive closure of the generating pairs, as rows."""
    labels = tuple(labels)
    index = {}
    for lab in labels:
        if lab in index:
            raise DuplicateLabel(f"duplicate label {lab!r}")
        index[lab] = len(index)
    rows = [bit(i) for i in range(len(labels))]
    edges = []
    for a, b in pairs:
        try:
            ia, ib = index[a], index[b]
        except KeyError as exc:
            raise UnknownLabel(f"unknown label {exc.args[0]!r} in pair ({a!r}, {b!r})") from None
        rows[ia] |= bit(ib)
        edges.append((ia, ib))
    return labels, warshall(rows), edges


def _shortest_path(n, edges, src, dst):
    """BFS over the generating edges; returns an index path src..dst."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for v in adj[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    return None


class QuasiOrder:
    """A finite set with a reflexive transitive relation."""

    def __init__(self, labels, rel, validate=True):
        self.labels = tuple(labels)
        self.rel = tuple(rel)
        if validate:
            self._validate()

    def _validate(self):
        n = len(self.labels)
        seen = set()
        for lab in self.labels:
            if lab in seen:
                raise DuplicateLabel(f"duplicate label {lab!r}")
            seen.add(lab)
        if len(self.rel) != n:
            raise ValueError("relation must have one row per element")
        full = full_mask(n)
        for i, row in enumerate(self.rel):
            if row & ~full:
                raise ValueError(f"row {i} references elements outside 0..{n - 1}")
            if not row & bit(i):
                raise ValueError(f"relation is not reflexive at {self.labels[i]!r}")
        if not is_transitive(self.rel):
            raise ValueError("relation is not transitive")

    @classmethod
    def from_pairs(cls, labels, pairs):
        """Quasi-order generated by the pairs; cycles are permitted."""
        labels, rows, _ = _closed_rows(labels, pairs)
        return cls(labels, rows, validate=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}") from None

    def le(self, i: int, j: int) -> bool:
        return bool(self.rel[i] >> j & 1)

    def up_mask(self, i: int) -> int:
        return self.rel[i]

    def down_mask(self, i: int) -> int:
        return self._cols[i]

    @cached_property
    def _cols(self):
        return tuple(transpose(self.rel, self.n))

    def upper_segment(self, p: int) -> frozenset[int]:
        """All x with p below x (p itself included)."""
        return frozenset(bits(self.rel[p]))

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.labels == other.labels
            and self.rel == other.rel
        )

    def __hash__(self):
        return hash((type(self).__name__, self.labels, self.rel))

    def __repr__(self):
        strict = sum(row.bit_count() - 1 for row in self.rel)
        return f"{type(self).__name__}(n={self.n}, strict_pairs={strict})"


class Poset(QuasiOrder):
    """A quasi-order that is additionally antisymmetric."""

    def _validate(self):
        super()._validate()
        for i in range(self.n):
            for j in bits(self.rel[i]):
                if j != i and self.rel[j] >> i & 1:
                    raise CycleViolatesAntisymmetry([self.labels[i], self.labels[j], self.labels[i]])

    @classmethod
    def from_pairs(cls, labels, pairs):
        """Poset generated by the pairs; fails if the closure has a cycle.

        The error names an explicit cycle through the offending pair,
        reconstructed from the generators.
        """
        labels, rows, edges = _closed_rows(labels, pairs)
        n = len(labels)
        for i in range(n):
            for j in bits(rows[i]):
                if j != i and rows[j] >> i & 1:
                    there = _shortest_path(n, edges, i, j)
                    back = _shortest_path(n, edges, j, i)
                    cycle = there + back[1:]
                    raise CycleViolatesAntisymmetry([labels[k] for k in cycle])
        return cls(labels, rows, validate=False)

    @cached_property
    def strict(self):
        return tuple(row & ~bit(i) for i, row in enumerate(self.rel))

    @cached_property
    def cover_rows(self):
        """Row i holds the elements covering i (nothing strictly between)."""
        out = []
        for i in range(self.n):
            s = self.strict[i]
            between = 0
            for r in bits(s):
                between |= self.strict[r]
            out.append(s & ~between)
        return tuple(out)

    @cached_property
    def cover_cols(self):
        return tuple(transpose(self.cover_rows, self.n))

    def covers(self):
        """All pairs (p, q) with q covering p, sorted by index."""
        return tuple((i, j) for i in range(self.n) for j in bits(self.cover_rows[i]))

    def maximal_elements(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if not self.strict[i])

    def minimal_elements(self) -> frozenset[int]:
        cols = self._cols
        return frozenset(i for i in range(self.n) if cols[i] == bit(i))

    def downset_masks(self) -> list[int]:
        """All down-closed subsets as bitmasks, in increasing mask order."""
        n = self.n
        down = self._cols
        if n == 0:
            return [0]
        req = [0] * (1 << n)
        out = []
        for m in range(1 << n):
            if m:
                low = m & -m
                req[m] = req[m ^ low] | down[low.bit_length() - 1]
            if req[m] == m:
                out.append(m)
        return out


def upper_segment(relation: QuasiOrder, p: int) -> frozenset[int]:
    """Upper segment of p: the set of x with p related to x."""
    return relation.upper_segment(p)


def quotient_poset(q: QuasiOrder) -> tuple[Poset, tuple[int, ...]]:
    """Collapse mutually related elements; order the classes by the relation.

    Returns the class poset together with the projection index -> class
    index. Classes are numbered by their least member, so the projection
    is deterministic; it is surjective and order-reflecting by
    construction.
    """
    n, rel = q.n, q.rel
    class_of = [-1] * n
    reps = []
    for i in range(n):
        if class_of[i] >= 0:
            continue
        cid = len(reps)
        class_of[i] = cid
        for j in bits(rel[i]):
            if j > i and rel[j] >> i & 1:
                class_of[j] = cid
        reps.append(i)
    rows = []
    for ra in reps:
        row = 0
        for b, rb in enumerate(reps):
            if rel[ra] >> rb & 1:
                row |= bit(b)
        rows.append(row)
    labels = tuple(q.labels[r] for r in reps)
    return Poset(labels, tuple(rows), validate=False), tuple(class_of)


def _rel_of(structure):
    order = getattr(structure, "order", None)
    return order.rel if order is not None else structure.rel


def _refine_colors(rel, n):
    """Stable neighborhood colors of a relation digraph (1-WL style)."""
    cols = transpose(rel, n)
    colors = [(rel[i].bit_count(), cols[i].bit_count()) for i in range(n)]
    distinct = len(set(colors))
    for _ in range(4):
        new = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in bits(rel[i]))),
                tuple(sorted(colors[j] for j in bits(cols[i]))),
            )
            for i in range(n)
        ]
        new_distinct = len(set(new))
        if new_distinct == distinct:
            break
        colors, distinct = new, new_distinct
    return colors


def is_isomorphic(a, b):
    """Relation-preserving bijection between two structures, if one exists.

    Accepts posets, quasi-orders and lattices (through their underlying
    posets). Returns a tuple mapping indices of ``a`` to indices of ``b``,
    or None. Backtracking over neighborhood-color candidate classes; the
    mapping is verified order-preserving in both directions before being
    returned.
    """
    ra, rb = _rel_of(a), _rel_of(b)
    n = len(ra)
    if len(rb) != n:
        return None
    ca = _refine_colors(ra, n)
    cb = _refine_colors(rb, n)
    if sorted(ca) != sorted(cb):
        return None
    cand = [[j for j in range(n) if cb[j] == ca[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(cand[i]), i))
    mapping = [-1] * n
    used = [False] * n
    assigned = []

    def backtrack(k):
        if k == n:
            return True
        i = order[k]
        for j in cand[i]:
            if used[j]:
                continue
            ok = True
            for i2 in assigned:
                j2 = mapping[i2]
                if (ra[i] >> i2 & 1) != (rb[j] >> j2 & 1) or (ra[i2] >> i & 1) != (rb[j2] >> j & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[i] = j
            used[j] = True
            assigned.append(i)
            if backtrack(k + 1):
                return True
            assigned.pop()
            used[j] = False
            mapping[i] = -1
        return False

    if not backtrack(0):
        return None
    for i in range(n):
        for j in range(n):
            assert (ra[i] >> j & 1) == (rb[mapping[i]] >> mapping[j] & 1)
    return tuple(mapping)


__all__ = [
    "Poset",
    "QuasiOrder",
    "is_isomorphic",
    "quotient_poset",
    "upper_segment",
]
