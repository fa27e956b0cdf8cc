"""Reading and writing instance files.

Two interchangeable formats, auto-detected on load:

* line-oriented text: a ``kind`` line, one ``elem <label>`` line per
  element, then ``rel <a> <b>`` generator lines; ``#`` starts a comment
* JSON: an object with keys ``kind``, ``elements``, ``relation``

The relation lines are generators; the appropriate closure is applied
per kind. Posets and lattices are serialized by their cover pairs, the
smallest faithful generating set; joins and meets are recomputed on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParseError
from .lattice import FiniteLattice, lattice_from_poset
from .order import Poset, QuasiOrder

KINDS = ("poset", "quasiorder", "lattice")


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    elements: tuple[str, ...]
    relation: tuple[tuple[str, str], ...]

    def build(self, cap=None):
        """Construct the structure this instance describes."""
        if self.kind == "poset":
            return Poset.from_pairs(self.elements, self.relation)
        if self.kind == "quasiorder":
            return QuasiOrder.from_pairs(self.elements, self.relation)
        return lattice_from_poset(Poset.from_pairs(self.elements, self.relation))


def parse_instance_text(text: str) -> InstanceFile:
    kind = None
    elements: list[str] = []
    relation: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "kind":
            if len(parts) != 2:
                raise ParseError("expected: kind <poset|quasiorder|lattice>", line=lineno)
            if parts[1] not in KINDS:
                raise ParseError(f"unknown kind {parts[1]!r}", line=lineno)
            if kind is not None:
                raise ParseError("duplicate kind line", line=lineno)
            kind = parts[1]
        elif parts[0] == "elem":
            if len(parts) != 2:
                raise ParseError("expected: elem <label>", line=lineno)
            elements.append(parts[1])
        elif parts[0] == "rel":
            if len(parts) != 3:
                raise ParseError("expected: rel <label> <label>", line=lineno)
            relation.append((parts[1], parts[2]))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", line=lineno)
    if kind is None:
        raise ParseError("missing kind line")
    return InstanceFile(kind, tuple(elements), tuple(relation))


def parse_instance_json(text: str) -> InstanceFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    missing = [k for k in ("kind", "elements", "relation") if k not in obj]
    if missing:
        raise ParseError(f"missing JSON keys: {', '.join(missing)}")
    kind = obj["kind"]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    elements = tuple(str(e) for e in obj["elements"])
    relation = []
    for pair in obj["relation"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"relation entries must be pairs, got {pair!r}")
        relation.append((str(pair[0]), str(pair[1])))
    return InstanceFile(kind, elements, tuple(relation))


def parse_instance(text: str) -> InstanceFile:
    """Auto-detect JSON versus text by the first non-space character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_instance_json(text)
    return parse_instance_text(text)


def load_instance(path) -> InstanceFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def instance_to_text(inst: InstanceFile) -> str:
    for lab in inst.elements:
        if not lab or any(c.isspace() for c in lab):
            raise ValueError(f"label {lab!r} cannot be written in the text format")
    lines = [f"kind {inst.kind}"]
    lines.extend(f"elem {lab}" for lab in inst.elements)
    lines.extend(f"rel {a} {b}" for a, b in inst.relation)
    return "\n".join(lines) + "\n"


def instance_to_json_dict(inst: InstanceFile) -> dict:
    return {
        "kind": inst.kind,
        "elements": list(inst.elements),
        "relation": [list(pair) for pair in inst.relation],
    }


def poset_instance(p: Poset) -> InstanceFile:
    covers = tuple((p.labels[a], p.labels[b]) for a, b in p.covers())
    return InstanceFile("poset", p.labels, covers)


def quasiorder_instance(q: QuasiOrder) -> InstanceFile:
    pairs = tuple(
        (q.labels[i], q.labels[j])
        for i in range(q.n)
        for j in range(q.n)
        if i != j and q.le(i, j)
    )
    return InstanceFile("quasiorder", q.labels, pairs)


def lattice_instance(lat: FiniteLattice) -> InstanceFile:
    p = lat.order
    covers = tuple((p.labels[a], p.labels[b]) for a, b in p.covers())
    return InstanceFile("lattice", p.labels, covers)


def instance_of(structure) -> InstanceFile:
    if isinstance(structure, FiniteLattice):
        return lattice_instance(structure)
    if isinstance(structure, Poset):
        return poset_instance(structure)
    return quasiorder_instance(structure)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(structure, name="G") -> str:
    """DOT digraph of the cover relation (posets and lattices) or of the
    strict relation (quasi-orders, which have no cover reduction)."""
    if isinstance(structure, FiniteLattice):
        structure = structure.order
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    labels = structure.labels
    for i, lab in enumerate(labels):
        lines.append(f"  n{i} [label={_dot_quote(str(lab))}];")
    if isinstance(structure, Poset):
        edges = structure.covers()
    else:
        edges = [
            (i, j)
            for i in range(structure.n)
            for j in range(structure.n)
            if i != j and structure.le(i, j)
        ]
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "InstanceFile",
    "instance_of",
    "instance_to_json_dict",
    "instance_to_text",
    "lattice_instance",
    "load_instance",
    "parse_instance",
    "poset_instance",
    "quasiorder_instance",
    "to_dot",
]
