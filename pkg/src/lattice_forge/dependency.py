"""The join-dependency relation of a finite lattice and its closures.

For join-irreducibles p, q the dependency p -> q holds iff p != q and
some x satisfies p <= q v x but p is not below (lower cover of q) v x.
Everything here is indexed over the join-irreducible list, not over the
whole lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import bit, bits, full_mask, warshall
from .errors import InvariantViolation, SizeCapExceeded
from .lattice import FiniteLattice, JoinIrreducibleInfo

MINIMAL_PAIR_CAP = 16


@dataclass(frozen=True)
class DependencyData:
    """Dependency digraph on the join-irreducibles, with its closures.

    ``d`` is the raw dependency relation, ``strict`` its transitive
    closure, ``refl`` the reflexive-transitive closure, and ``classes``
    the mutual-reachability classes, ordered by least contained index.
    All relations are row bitmasks over join-irreducible indices.
    """

    base: tuple[JoinIrreducibleInfo, ...]
    d: tuple[int, ...]
    strict: tuple[int, ...]
    refl: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(info.element for info in self.base)

    def d_pairs(self):
        """Dependency pairs as (element, element) lattice indices."""
        el = self.elements
        return tuple((el[a], el[b]) for a in range(len(el)) for b in bits(self.d[a]))


def join_dependency(lattice: FiniteLattice) -> DependencyData:
    """Dependency relation by the definitional scan over all x.

    Costs O(|J|^2 * |L|) table lookups. The result is checked against the
    structural facts every finite lattice satisfies (irreflexivity, the
    closure identities, and the exclusion of two-element upper segments);
    a failure raises InvariantViolation naming the offender.
    """
    infos = lattice.join_irreducibles
    m = len(infos)
    order = lattice.order
    join = lattice.join
    n = lattice.n
    d = [0] * m
    for a, pa in enumerate(infos):
        p = pa.element
        up_p = order.rel[p]
        for b, qb in enumerate(infos):
            if a == b:
                continue
            q, qstar = qb.element, qb.lower_cover
            jq, jqs = join[q], join[qstar]
            for x in range(n):
                if up_p >> jq[x] & 1 and not up_p >> jqs[x] & 1:
                    d[a] |= bit(b)
                    break
    strict = warshall(d)
    diag = [bit(a) for a in range(m)]
    refl = [strict[a] | diag[a] for a in range(m)]

    class_of = [-1] * m
    classes = []
    for a in range(m):
        if class_of[a] >= 0:
            continue
        members = [a] + [b for b in bits(refl[a]) if b != a and refl[b] >> a & 1]
        cid = len(classes)
        for x in members:
            class_of[x] = cid
        classes.append(tuple(sorted(members)))

    data = DependencyData(
        base=infos,
        d=tuple(d),
        strict=tuple(strict),
        refl=tuple(refl),
        classes=tuple(classes),
    )
    _check_dependency_invariants(lattice, data, class_of)
    return data


def _check_dependency_invariants(lattice, data, class_of):
    m = len(data.base)
    for a in range(m):
        if data.d[a] >> a & 1:
            raise InvariantViolation("dependency relation is reflexive at "
                                     f"{lattice.labels[data.base[a].element]!r}")
        for b in bits(data.d[a]):
            if lattice.le(data.base[a].element, data.base[b].element):
                raise InvariantViolation("dependency holds upward along the order")
        # the two closures determine each other
        expected_strict_diag = len(data.classes[class_of[a]]) >= 2
        if bool(data.strict[a] >> a & 1) != expected_strict_diag:
            raise InvariantViolation("transitive closure disagrees with class sizes at "
                                     f"{lattice.labels[data.base[a].element]!r}")
        if data.refl[a] != (data.strict[a] | bit(a)):
            raise InvariantViolation("reflexive closure is not strict-closure plus diagonal")
        if data.refl[a].bit_count() == 2:
            raise InvariantViolation(
                "upper segment of "
                f"{lattice.labels[data.base[a].element]!r} in the dependency closure "
                "has exactly two elements"
            )


def minimal_pairs(lattice: FiniteLattice, cap: int | None = None):
    """All minimal pairs (p, I): p join-irreducible, I a set of
    join-irreducibles not containing p with p below the join of I, and I
    minimal among dominated witnessing sets.

    A candidate survives iff p stays above no join of dom(I) minus a
    member of I, where dom(I) collects every join-irreducible below some
    member of I; by monotonicity of joins this is equivalent to
    quantifying over all dominated subsets. Subset joins are tabulated,
    so the join-irreducible count is capped (default 16).
    """
    infos = lattice.join_irreducibles
    m = len(infos)
    cap = MINIMAL_PAIR_CAP if cap is None else cap
    if m > cap:
        raise SizeCapExceeded(f"{m} join-irreducibles, cap is {cap}")
    elems = [info.element for info in infos]
    join = lattice.join
    joinsub = [lattice.bottom] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        joinsub[mask] = join[joinsub[mask ^ low]][elems[low.bit_length() - 1]]
    below = [0] * m
    for k in range(m):
        for x in range(m):
            if lattice.le(elems[x], elems[k]):
                below[k] |= bit(x)
    order = lattice.order
    out = []
    for a in range(m):
        p = elems[a]
        up_p = order.rel[p]
        avail = full_mask(m) & ~bit(a)
        sub = avail
        candidates = []
        while sub:
            if sub.bit_count() >= 2 and up_p >> joinsub[sub] & 1:
                candidates.append(sub)
            sub = (sub - 1) & avail
        for imask in sorted(candidates):
            dom = 0
            for k in bits(imask):
                dom |= below[k]
            if all(not up_p >> joinsub[dom & ~bit(k)] & 1 for k in bits(imask)):
                out.append((p, frozenset(elems[k] for k in bits(imask))))
    return out


def dependency_via_minimal_pairs(lattice: FiniteLattice, cap: int | None = None):
    """Dependency relation reconstructed from minimal-pair membership.

    Returns row bitmasks aligned with join_dependency(...).base; the two
    computations agree on every finite lattice, which the verification
    sweeps assert.
    """
    infos = lattice.join_irreducibles
    pos = {info.element: k for k, info in enumerate(infos)}
    rows = [0] * len(infos)
    for p, group in minimal_pairs(lattice, cap=cap):
        for q in group:
            rows[pos[p]] |= bit(pos[q])
    return tuple(rows)


def is_lower_bounded(lattice: FiniteLattice) -> bool:
    """True iff the dependency digraph has no cycle."""
    data = join_dependency(lattice)
    return not any(data.strict[a] >> a & 1 for a in range(len(data.base)))


__all__ = [
    "DependencyData",
    "dependency_via_minimal_pairs",
    "is_lower_bounded",
    "join_dependency",
    "minimal_pairs",
]
