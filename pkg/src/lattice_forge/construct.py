"""Constructions of atomistic lattices with prescribed dependency structure.

Three entry points:

* ``closed_sets_lattice`` realizes a quasi-order (whose upper segments
  never have exactly two elements) as the dependency closure on the atoms
  of a closed-set lattice.
* ``construct_optimal`` realizes a poset P as the poset of
  join-irreducible congruences of an atomistic lattice using as few
  join-irreducibles as possible: exactly |P| plus the spike weight of P.
* ``realize_partition`` turns a partition with some class of size != 2
  into a quasi-order whose mutual-pair classes are the given partition.

A subset X of the quasi-order's ground set is closed when p lies in X
whenever p sits below two distinct members of X. Closing a set takes a
single step: add every p whose upper segment meets X at least twice.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import bit, bits, mask_of
from .congruence import con_ji_poset_fast, congruence_lattice
from .dependency import join_dependency
from .errors import (
    AllClassesSize2,
    ConditionIIIViolated,
    InvariantViolation,
    SizeCapExceeded,
)
from .lattice import FiniteLattice, family_lattice, hereditary_lattice
from .order import Poset, QuasiOrder, is_isomorphic
from .spike import spike_report

GROUND_CAP = 20


@dataclass(frozen=True)
class Realization:
    """An atomistic lattice together with the element-to-atom bijection."""

    lattice: FiniteLattice
    atom_of: tuple[int, ...]
    provenance: str
    quasiorder: QuasiOrder


@dataclass(frozen=True)
class OptimalQ:
    """The inflated quasi-order behind an optimal realization.

    ``pi`` projects each element back to the source poset;
    ``blocks`` groups the elements into the untouched block, the doubled
    spike bottoms, and the tripled multi-spike tops.
    """

    q: QuasiOrder
    pi: tuple[int, ...]
    p1: frozenset[int]
    blocks: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def condition_iii_witness(q: QuasiOrder):
    """Index of an element whose upper segment has exactly two elements,
    or None when no such element exists."""
    for p in range(q.n):
        if q.rel[p].bit_count() == 2:
            return p
    return None


def check_condition_iii(q: QuasiOrder) -> bool:
    return condition_iii_witness(q) is None


def _close_mask(upsegs, x: int) -> int:
    add = 0
    for p, seg in enumerate(upsegs):
        if not x >> p & 1 and (seg & x).bit_count() >= 2:
            add |= 1 << p
    return x | add


def one_step_closure(q: QuasiOrder, subset) -> frozenset[int]:
    """Least closed superset of the given set of indices.

    One application of the rule suffices; idempotence is checked.
    """
    x = mask_of(subset)
    closed = _close_mask(q.rel, x)
    if _close_mask(q.rel, closed) != closed:
        raise InvariantViolation("one-step closure is not idempotent")
    return frozenset(bits(closed))


def closed_sets_lattice(q: QuasiOrder, cap: int | None = None) -> Realization:
    """Lattice of all closed subsets of the quasi-order, by containment.

    Requires every upper segment to have size other than two. The result
    is atomistic with the singletons as atoms, and the dependency
    relation on the atoms reproduces the input: the raw dependency
    matches the strict relation and its reflexive closure matches the
    quasi-order, via the singleton map. Both facts are verified before
    returning.
    """
    witness = condition_iii_witness(q)
    if witness is not None:
        raise ConditionIIIViolated(q.labels[witness])
    cap = GROUND_CAP if cap is None else cap
    if q.n > cap:
        raise SizeCapExceeded(f"quasi-order has {q.n} elements, cap is {cap}")
    upsegs = q.rel
    members = [x for x in range(1 << q.n) if _close_mask(upsegs, x) == x]
    lat = family_lattice(
        members, q.labels, closure_fn=lambda u: _close_mask(upsegs, u), validate=False
    )
    index = {m: k for k, m in enumerate(members)}
    atom_of = tuple(index[bit(p)] for p in range(q.n))
    _verify_realization(q, lat, atom_of)
    return Realization(lattice=lat, atom_of=atom_of, provenance="closed-sets", quasiorder=q)


def _verify_realization(q, lat, atom_of):
    if not lat.is_atomistic:
        raise InvariantViolation("closed-set lattice is not atomistic")
    data = join_dependency(lat)
    if sorted(data.elements) != sorted(atom_of) or set(atom_of) != lat.atoms:
        raise InvariantViolation("join-irreducibles of the closed-set lattice differ from its atoms")
    pos = {element: k for k, element in enumerate(data.elements)}
    for a in range(q.n):
        ka = pos[atom_of[a]]
        for b in range(q.n):
            kb = pos[atom_of[b]]
            expected = q.le(a, b)
            if bool(data.refl[ka] >> kb & 1) != expected:
                raise InvariantViolation(
                    "dependency closure on atoms disagrees with the quasi-order at "
                    f"({q.labels[a]!r}, {q.labels[b]!r})"
                )
            if bool(data.d[ka] >> kb & 1) != (expected and a != b):
                raise InvariantViolation(
                    "raw dependency on atoms disagrees with the strict relation at "
                    f"({q.labels[a]!r}, {q.labels[b]!r})"
                )


def optimal_Q(p: Poset) -> OptimalQ:
    """Inflate a poset into the quasi-order behind its optimal realization.

    Bottoms of uniquely-topped spikes are doubled and multi-spike tops
    are tripled; everything else is kept. Two elements are related iff
    their projections are. The result always satisfies the upper-segment
    condition, and its size is the poset size plus the spike weight.
    """
    report = spike_report(p)
    p1 = frozenset(b for b, t in report.spikes if t in report.unique_boundary)
    multi = report.multi_boundary
    labels: list[str] = []
    pi: list[int] = []
    used = set(p.labels[i] for i in range(p.n) if i not in p1 and i not in multi)

    def fresh(base):
        lab = base
        while lab in used:
            lab += "'"
        used.add(lab)
        return lab

    keep_block, double_block, triple_block = [], [], []
    for i in range(p.n):
        if i not in p1 and i not in multi:
            keep_block.append(len(labels))
            labels.append(p.labels[i])
            pi.append(i)
    for i in sorted(p1):
        for k in range(2):
            double_block.append(len(labels))
            labels.append(fresh(f"{p.labels[i]}.{k}"))
            pi.append(i)
    for i in sorted(multi):
        for k in range(3):
            triple_block.append(len(labels))
            labels.append(fresh(f"{p.labels[i]}.{k}"))
            pi.append(i)
    rows = [
        mask_of(b for b in range(len(pi)) if p.le(pi[a], pi[b]))
        for a in range(len(pi))
    ]
    q = QuasiOrder(tuple(labels), tuple(rows), validate=False)
    if q.n != p.n + report.alpha:
        raise InvariantViolation("inflated quasi-order has the wrong size")
    if condition_iii_witness(q) is not None:
        raise InvariantViolation("inflated quasi-order has a two-element upper segment")
    return OptimalQ(
        q=q,
        pi=tuple(pi),
        p1=p1,
        blocks=(tuple(keep_block), tuple(double_block), tuple(triple_block)),
    )


def construct_optimal(p: Poset, cap: int | None = None) -> Realization:
    """Atomistic lattice whose congruence lattice is the down-set lattice
    of p, with exactly |p| + alpha(p) join-irreducibles.

    Postconditions verified: the join-irreducible count formula, the
    quotient of the dependency closure being isomorphic to p, and the
    congruence lattice being isomorphic to the down-set lattice of p.
    """
    inflated = optimal_Q(p)
    real = closed_sets_lattice(inflated.q, cap=cap)
    lat = real.lattice
    alpha = spike_report(p).alpha
    if len(lat.join_irreducibles) != p.n + alpha:
        raise InvariantViolation("join-irreducible count differs from size plus spike weight")
    if is_isomorphic(con_ji_poset_fast(lat), p) is None:
        raise InvariantViolation(
            "quotient of the dependency closure is not isomorphic to the input poset"
        )
    cl, _ = congruence_lattice(lat)
    if is_isomorphic(cl, hereditary_lattice(p)) is None:
        raise InvariantViolation(
            "congruence lattice is not isomorphic to the down-set lattice of the input"
        )
    return Realization(
        lattice=lat, atom_of=real.atom_of, provenance="optimal", quasiorder=inflated.q
    )


def realize_partition(labels, classes) -> QuasiOrder:
    """Quasi-order whose mutual-pair classes equal the given partition.

    Requires some class of size other than two. Members of two-element
    classes are placed below everything in the anchor class (the first
    class, in label order, of size other than two); all other relations
    come from the partition itself.
    """
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValueError("labels are not distinct")
    class_lists = []
    assigned = {}
    for cls in classes:
        members = []
        for lab in cls:
            if lab not in index:
                raise ValueError(f"label {lab!r} is not in the ground set")
            if lab in assigned:
                raise ValueError(f"label {lab!r} appears in two classes")
            assigned[lab] = len(class_lists)
            members.append(index[lab])
        if members:
            class_lists.append(sorted(members))
    if len(assigned) != len(labels):
        missing = next(lab for lab in labels if lab not in assigned)
        raise ValueError(f"label {missing!r} is not covered by the partition")
    class_lists.sort()
    anchors = [c for c in class_lists if len(c) != 2]
    if not anchors:
        raise AllClassesSize2("every class has exactly two elements")
    anchor_mask = mask_of(anchors[0])
    masks = [mask_of(c) for c in class_lists]
    rows = [0] * len(labels)
    for c, members in enumerate(class_lists):
        row = masks[c]
        if len(members) == 2:
            row |= anchor_mask
        for i in members:
            rows[i] = row
    q = QuasiOrder(labels, tuple(rows), validate=True)
    got_classes = sorted(sorted(bits(q.rel[i] & q._cols[i])) for i in range(q.n))
    want_classes = sorted(class_lists)
    unique_got = [c for k, c in enumerate(got_classes) if k == 0 or c != got_classes[k - 1]]
    if unique_got != want_classes:
        raise InvariantViolation("mutual pairs of the realization differ from the partition")
    if condition_iii_witness(q) is not None:
        raise InvariantViolation("partition realization has a two-element upper segment")
    return q


__all__ = [
    "OptimalQ",
    "Realization",
    "check_condition_iii",
    "closed_sets_lattice",
    "condition_iii_witness",
    "construct_optimal",
    "one_step_closure",
    "optimal_Q",
    "realize_partition",
]
