"""Structure-class engine for the generating achievement game.

A position of the game is a subset of the group; two positions are
equivalent when the smallest intersection-family member containing them is
the same subgroup I.  Each equivalence class carries a type triple
(|I| mod 2, nim at even-sized positions, nim at odd-sized positions), and
the triples satisfy a mex recursion over the class option digraph.  The
nim-value of the game is the even-position entry of the class of the
Frattini subgroup, since the empty starting position sits there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .groups import ElementSet, GroupTable
from .lattice import SubgroupFamily, ceil_mask, intersection_family


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in the collection."""
    present = set(values)
    k = 0
    while k in present:
        k += 1
    return k


class TypeTriple(tuple):
    """(parity of |I|, nim at even positions, nim at odd positions)."""

    __slots__ = ()

    def __new__(cls, eps: int, a: int, b: int):
        return super().__new__(cls, (eps, a, b))

    @property
    def eps(self) -> int:
        return self[0]

    @property
    def a(self) -> int:
        return self[1]

    @property
    def b(self) -> int:
        return self[2]


@dataclass(frozen=True)
class DeficiencyClassLabel:
    """E/O bucket of a structure class: parity kind, deficiency m, and for
    odd deficiency-2 classes the a/b split (a = no even-deficiency-2 option)."""

    kind: str  # "E" for even |I|, "O" for odd
    m: int
    refinement: str | None = None

    def __str__(self) -> str:
        return f"{self.kind}{self.m}{self.refinement or ''}"


@dataclass(frozen=True)
class StructureClass:
    """One class of the position equivalence, keyed by its subgroup I.

    `options` holds indices into the canonical class list of the classes
    reachable by adding one element outside I.  Type and label are None
    until compute_types / label_deficiency_classes fill them in.
    """

    subgroup: ElementSet
    parity: int
    deficiency: int
    options: tuple[int, ...]
    type_triple: TypeTriple | None = None
    dclass: DeficiencyClassLabel | None = None


@dataclass(frozen=True)
class GameReport:
    group: str
    order: int
    dG: int
    n_maximal: int
    n_intersections: int
    nim: int
    frattini_type: TypeTriple
    frattini_index: int
    classes: tuple[StructureClass, ...]


# ---------------------------------------------------------------------------
# deficiency


def _join_map_factory(group: GroupTable):
    from .groups import closure_mask

    cache: dict[int, int] = {}

    def join(sub_bits: int, g: int) -> int:
        seed = sub_bits | (1 << g)
        out = cache.get(seed)
        if out is None:
            out = closure_mask(group, seed)
            cache[seed] = out
        return out

    return join


def deficiency_map(group: GroupTable, subgroup_masks: Sequence[int]) -> dict[int, int]:
    """Deficiency of every subgroup: fewest elements whose addition generates
    the whole group.

    Dynamic program over the join digraph, processed in decreasing subgroup
    size; adding one element strictly enlarges the subgroup, so every join
    target is already solved.
    """
    full = (1 << group.order) - 1
    join = _join_map_factory(group)
    delta: dict[int, int] = {}
    for sub in sorted(subgroup_masks, key=lambda m: (-m.bit_count(), m)):
        if sub == full:
            delta[sub] = 0
            continue
        best = None
        rest = full & ~sub
        while rest:
            low = rest & -rest
            rest ^= low
            d = delta[join(sub, low.bit_length() - 1)]
            if best is None or d < best:
                best = d
                if best == 0:
                    break
        assert best is not None
        delta[sub] = 1 + best
    return delta


def deficiency(group: GroupTable, subgroups: Sequence[ElementSet], k: ElementSet) -> int:
    """Deficiency of the subgroup k, given the full subgroup list."""
    masks = [s.bits for s in subgroups]
    if k.bits not in set(masks):
        raise ValueError("k is not in the provided subgroup list")
    return deficiency_map(group, masks)[k.bits]


def deficiency_of_set(group: GroupTable, family: SubgroupFamily, subset: ElementSet) -> int:
    """Deficiency of an arbitrary subset.

    Equals the deficiency of the smallest family member containing the
    subset: a set lies in exactly the same maximal subgroups as that
    member, so the same added elements complete either to a generating set.
    """
    full = (1 << group.order) - 1
    ceil = ceil_mask(family.maximal_masks(), full, subset.bits)
    masks = [s.bits for s in family.all]
    return deficiency_map(group, masks)[ceil]


# ---------------------------------------------------------------------------
# structure classes


def build_structure_classes(group: GroupTable, family: SubgroupFamily) -> list[StructureClass]:
    """One class per member of family.withG, in canonical (size, mask) order.

    The options of the class of I are the classes of the least members
    containing I plus one outside element; they strictly contain I, so the
    option relation is a DAG.
    """
    full = (1 << group.order) - 1
    members = family.member_masks()
    index_of = {m: i for i, m in enumerate(members)}
    max_masks = family.maximal_masks()
    masks = [s.bits for s in family.all]
    delta = deficiency_map(group, masks)

    classes = []
    for sub in members:
        opts = set()
        rest = full & ~sub
        while rest:
            low = rest & -rest
            rest ^= low
            target = ceil_mask(max_masks, full, sub | low)
            assert target & ~sub and sub & ~target == 0
            opts.add(index_of[target])
        classes.append(
            StructureClass(
                subgroup=ElementSet(group, sub),
                parity=sub.bit_count() % 2,
                deficiency=delta[sub],
                options=tuple(sorted(opts)),
            )
        )
    return classes


def compute_types(classes: Sequence[StructureClass]) -> list[StructureClass]:
    """Fill in type triples by the mex recursion, options first.

    The whole-group class is the base case (eps, 0, 0).  Everything else
    takes A = {a of options}, B = {b of options} and sets
        a = mex(B), b = mex(A + {a})   when |I| is even,
        b = mex(A), a = mex(B + {b})   when |I| is odd.
    Iterative sweep in decreasing subgroup size; options always have
    strictly larger subgroups, so they are typed first.
    """
    order_desc = sorted(range(len(classes)), key=lambda i: (-len(classes[i].subgroup), classes[i].subgroup.bits))
    out: list[StructureClass | None] = [None] * len(classes)
    for i in order_desc:
        cls = classes[i]
        if not cls.options:
            trip = TypeTriple(cls.parity, 0, 0)
        else:
            a_set = set()
            b_set = set()
            for j in cls.options:
                t = out[j].type_triple
                a_set.add(t.a)
                b_set.add(t.b)
            if cls.parity == 0:
                a = mex(b_set)
                b = mex(a_set | {a})
            else:
                b = mex(a_set)
                a = mex(b_set | {b})
            trip = TypeTriple(cls.parity, a, b)
        out[i] = replace(cls, type_triple=trip)
    return out  # type: ignore[return-value]


def label_deficiency_classes(classes: Sequence[StructureClass]) -> list[StructureClass]:
    """Attach E_m / O_m labels; odd deficiency-2 classes split a/b by the
    absence/presence of an even deficiency-2 option."""
    out = []
    for cls in classes:
        kind = "E" if cls.parity == 0 else "O"
        refinement = None
        if kind == "O" and cls.deficiency == 2:
            has_e2 = any(
                classes[j].parity == 0 and classes[j].deficiency == 2
                for j in cls.options
            )
            refinement = "b" if has_e2 else "a"
        out.append(replace(cls, dclass=DeficiencyClassLabel(kind, cls.deficiency, refinement)))
    return out


def nim_of_game(group: GroupTable, name: str | None = None) -> GameReport:
    """Full pipeline: lattice, classes, deficiencies, types, labels, nim.

    The starting position is the empty set, an even-sized subset of the
    Frattini subgroup, so the game's nim-value is the even-position entry
    of the Frattini class type.
    """
    family = intersection_family(group)
    classes = label_deficiency_classes(compute_types(build_structure_classes(group, family)))
    frat_idx = next(i for i, c in enumerate(classes) if c.subgroup == family.frattini)
    frat = classes[frat_idx]
    return GameReport(
        group=name if name is not None else group.name,
        order=group.order,
        dG=frat.deficiency,
        n_maximal=len(family.maximal),
        n_intersections=len(family.intersections),
        nim=frat.type_triple.a,
        frattini_type=frat.type_triple,
        frattini_index=frat_idx,
        classes=tuple(classes),
    )


# ---------------------------------------------------------------------------
# published classification tables reproduced by the recursion


def expected_even_type(m: int) -> TypeTriple:
    """Type that an even class of deficiency m provably gets in a group of
    even order: (0,0,0), (0,1,2), (0,0,2), then (0,0,1) for m >= 3."""
    table = {0: (0, 0), 1: (1, 2), 2: (0, 2)}
    a, b = table.get(m, (0, 1))
    return TypeTriple(0, a, b)


def expected_odd_type(m: int) -> TypeTriple:
    """Type of a deficiency-m class in a group of odd order: (1,0,0),
    (1,2,1), (1,2,0), then (1,1,0) for m >= 3."""
    table = {0: (0, 0), 1: (2, 1), 2: (2, 0)}
    a, b = table.get(m, (1, 0))
    return TypeTriple(1, a, b)


# ---------------------------------------------------------------------------
# output


def _class_node_label(cls: StructureClass) -> str:
    sub = cls.subgroup
    if len(sub) <= 8:
        shown = "{" + ",".join(sub.group.labels[i] for i in sub) + "}"
    else:
        shown = f"#{sub.bits:x}"
    return f"{shown} ({len(sub)}), d={cls.deficiency} {cls.dclass}, {tuple(cls.type_triple)}"


def export_structure_digraph(report: GameReport) -> str:
    """Deterministic DOT rendering of the class digraph.

    Node identity is the subgroup bitmask in hex; nodes appear in canonical
    class order and edges sorted by endpoint indices, so repeated runs are
    byte-identical.
    """
    lines = [f'digraph "{report.group}" {{']
    lines.append(f'  label="{report.group}: nim *{report.nim}";')
    for cls in report.classes:
        lines.append(f'  s{cls.subgroup.bits:x} [label="{_class_node_label(cls)}"];')
    for i, cls in enumerate(report.classes):
        for j in cls.options:
            lines.append(f"  s{cls.subgroup.bits:x} -> s{report.classes[j].subgroup.bits:x};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_to_dict(report: GameReport) -> dict:
    """JSON-ready form of a report, classes in canonical order."""
    return {
        "group": report.group,
        "order": report.order,
        "dG": report.dG,
        "nim": report.nim,
        "frattini_type": list(report.frattini_type),
        "classes": [
            {
                "subgroup_size": len(cls.subgroup),
                "parity": cls.parity,
                "deficiency": cls.deficiency,
                "type": list(cls.type_triple),
                "options": list(cls.options),
            }
            for cls in report.classes
        ],
    }


def report_to_json(report: GameReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"
