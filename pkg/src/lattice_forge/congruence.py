"""Congruences of a finite lattice.

A congruence is stored as a normalized class map: entry i is the least
element index in i's class, so equal partitions compare bit-for-bit.
Principal congruences are generated by a union-find fixpoint; the whole
congruence lattice is the join closure of the principal congruences of
the join-irreducibles, with the identity adjoined.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dependency import join_dependency
from .errors import InvariantViolation
from .lattice import FiniteLattice, lattice_from_poset
from .order import Poset, QuasiOrder, quotient_poset
from ._bits import bit


@dataclass(frozen=True)
class Congruence:
    """A join/meet-compatible partition of a lattice's element set."""

    class_of: tuple[int, ...]

    def classes(self) -> tuple[tuple[int, ...], ...]:
        groups: dict[int, list[int]] = {}
        for i, r in enumerate(self.class_of):
            groups.setdefault(r, []).append(i)
        return tuple(tuple(groups[r]) for r in sorted(groups))

    def refines(self, other: "Congruence") -> bool:
        oc = other.class_of
        return all(oc[i] == oc[r] for i, r in enumerate(self.class_of))

    @property
    def class_count(self) -> int:
        return len(set(self.class_of))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _normalize(parent) -> tuple[int, ...]:
    least = {}
    out = []
    for i in range(len(parent)):
        r = _find(parent, i)
        if r not in least:
            least[r] = i
        out.append(least[r])
    return tuple(out)


def _close_under_translates(lattice, parent, seeds):
    """Merge seed pairs, then re-merge join/meet translates to fixpoint."""
    join, meet = lattice.join, lattice.meet
    n = lattice.n
    pending = []
    for x, y in seeds:
        rx, ry = _find(parent, x), _find(parent, y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            pending.append((x, y))
    while pending:
        x, y = pending.pop()
        jx, jy = join[x], join[y]
        mx, my = meet[x], meet[y]
        for c in range(n):
            u, v = jx[c], jy[c]
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
                pending.append((u, v))
            u, v = mx[c], my[c]
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
                pending.append((u, v))
    return parent


def principal_congruence(lattice: FiniteLattice, a: int, b: int) -> Congruence:
    """Least congruence identifying a with b."""
    parent = list(range(lattice.n))
    _close_under_translates(lattice, parent, [(a, b)])
    return Congruence(_normalize(parent))


def join_congruences(lattice: FiniteLattice, base: Congruence, other: Congruence) -> Congruence:
    """Least congruence containing both, by re-closing their union.

    The base partition seeds the union-find directly; only merges coming
    from the other partition need their translates propagated, since the
    base's own translates are already collapsed.
    """
    parent = list(base.class_of)
    seeds = [(i, r) for i, r in enumerate(other.class_of) if i != r]
    _close_under_translates(lattice, parent, seeds)
    return Congruence(_normalize(parent))


def congruence_lattice(lattice: FiniteLattice):
    """The lattice of all congruences, ordered by refinement.

    Every congruence arises as a join of principal congruences of
    join-irreducible generators, so the closure starts from those plus
    the identity. Returns the congruence lattice together with the tuple
    of Congruence values labeling its elements, aligned by index.
    """
    n = lattice.n
    identity = Congruence(tuple(range(n)))
    gens = []
    seen_gen = set()
    for info in lattice.join_irreducibles:
        g = principal_congruence(lattice, info.element, info.lower_cover)
        if g.class_of not in seen_gen:
            seen_gen.add(g.class_of)
            gens.append(g)
    found = {identity.class_of: identity}
    frontier = [identity]
    while frontier:
        c = frontier.pop()
        for g in gens:
            j = join_congruences(lattice, c, g)
            if j.class_of not in found:
                found[j.class_of] = j
                frontier.append(j)
    congruences = sorted(found.values(), key=lambda c: c.class_of)
    k = len(congruences)
    rows = []
    for a in range(k):
        row = 0
        for b in range(k):
            if congruences[a].refines(congruences[b]):
                row |= bit(b)
        rows.append(row)
    labels = tuple(f"c{i}" for i in range(k))
    order = Poset(labels, tuple(rows), validate=False)
    return lattice_from_poset(order), tuple(congruences)


def theta_map(lattice: FiniteLattice, con=None, dep=None):
    """Map each join-irreducible p to its principal congruence's index in
    the congruence lattice.

    The image is checked to be exactly the join-irreducible congruences,
    and the induced ordering to agree with the dependency closure.
    """
    cl, labeling = con if con is not None else congruence_lattice(lattice)
    data = dep if dep is not None else join_dependency(lattice)
    index_of = {c.class_of: k for k, c in enumerate(labeling)}
    theta = tuple(
        index_of[principal_congruence(lattice, info.element, info.lower_cover).class_of]
        for info in data.base
    )
    ji_of_cl = {info.element for info in cl.join_irreducibles}
    if set(theta) != ji_of_cl:
        raise InvariantViolation(
            "principal congruences of join-irreducibles do not cover exactly "
            "the join-irreducible congruences"
        )
    m = len(theta)
    for a in range(m):
        for b in range(m):
            if cl.le(theta[a], theta[b]) != bool(data.refl[a] >> b & 1):
                raise InvariantViolation(
                    "congruence containment disagrees with the dependency closure for "
                    f"{lattice.labels[data.base[a].element]!r} and "
                    f"{lattice.labels[data.base[b].element]!r}"
                )
    return theta


def con_ji_poset_fast(lattice: FiniteLattice, dep=None) -> Poset:
    """Poset of join-irreducible congruences, computed without building
    the congruence lattice: the quotient of the join-irreducibles under
    the dependency closure."""
    data = dep if dep is not None else join_dependency(lattice)
    labels = tuple(lattice.labels[info.element] for info in data.base)
    quasi = QuasiOrder(labels, data.refl, validate=False)
    poset, _ = quotient_poset(quasi)
    return poset


def je(lattice: FiniteLattice, dep=None) -> int:
    """Join-irreducible count minus join-irreducible congruence count."""
    data = dep if dep is not None else join_dependency(lattice)
    excess = len(data.base) - len(data.classes)
    assert excess >= 0
    return excess


def ji_poset(lattice: FiniteLattice) -> Poset:
    """Induced order on the join-irreducible elements of a lattice."""
    elems = [info.element for info in lattice.join_irreducibles]
    labels = tuple(lattice.labels[e] for e in elems)
    rows = []
    for a in elems:
        row = 0
        for k, b in enumerate(elems):
            if lattice.le(a, b):
                row |= bit(k)
        rows.append(row)
    return Poset(labels, tuple(rows), validate=False)


def con_ji_poset_bruteforce(lattice: FiniteLattice, con=None) -> Poset:
    """Poset of join-irreducible congruences read off the congruence
    lattice itself; the independent counterpart of con_ji_poset_fast."""
    cl, _ = con if con is not None else congruence_lattice(lattice)
    return ji_poset(cl)


__all__ = [
    "Congruence",
    "con_ji_poset_bruteforce",
    "con_ji_poset_fast",
    "congruence_lattice",
    "je",
    "ji_poset",
    "join_congruences",
    "principal_congruence",
    "theta_map",
]
