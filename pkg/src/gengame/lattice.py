"""Subgroup lattice machinery.

Enumerates all subgroups, picks out the maximal ones, closes them under
intersection, and provides the closure operator mapping a subset to the
smallest member of that intersection family (plus the whole group)
containing it.  Subgroups are handled as bitmasks throughout; families are
canonically sorted by (cardinality, bitmask) so downstream output is
byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import ElementSet, GroupTable, ResourceLimitError, closure_mask

DEFAULT_SUBGROUP_LIMIT = 50_000


def _sorted_masks(masks) -> list[int]:
    return sorted(masks, key=lambda m: (m.bit_count(), m))


def all_subgroup_masks(group: GroupTable, limit: int = DEFAULT_SUBGROUP_LIMIT) -> list[int]:
    """Bitmasks of every subgroup, sorted by (size, mask).

    Seeds with the cyclic subgroups <x> and repeatedly joins known
    subgroups with single outside elements until no new subgroup appears.
    Joining with x is the same as joining with <x>, so one representative
    per cyclic subgroup suffices.
    """
    n = group.order
    cyclics = sorted({closure_mask(group, 1 << x) for x in range(n)})
    subs: set[int] = set(cyclics)
    joins: dict[int, int] = {}
    frontier = list(cyclics)
    while frontier:
        fresh = []
        for sub in frontier:
            for cyc in cyclics:
                if cyc & ~sub == 0:
                    continue
                seed = sub | cyc
                grown = joins.get(seed)
                if grown is None:
                    grown = closure_mask(group, seed)
                    joins[seed] = grown
                if grown not in subs:
                    subs.add(grown)
                    fresh.append(grown)
                    if len(subs) > limit:
                        raise ResourceLimitError(
                            f"subgroup enumeration exceeds the limit {limit}"
                        )
        frontier = fresh
    return _sorted_masks(subs)


def all_subgroups(group: GroupTable, limit: int = DEFAULT_SUBGROUP_LIMIT) -> list[ElementSet]:
    """Every subgroup of the group, including the trivial one and the whole group."""
    return [ElementSet(group, m) for m in all_subgroup_masks(group, limit)]


def maximal_subgroup_masks(group: GroupTable, subgroup_masks: list[int] | None = None) -> list[int]:
    if subgroup_masks is None:
        subgroup_masks = all_subgroup_masks(group)
    full = (1 << group.order) - 1
    proper = [m for m in subgroup_masks if m != full]
    maximal = [
        m
        for m in proper
        if not any(other != m and m & ~other == 0 for other in proper)
    ]
    return _sorted_masks(maximal)


def maximal_subgroups(group: GroupTable, subgroups: list[ElementSet] | None = None) -> list[ElementSet]:
    """The maximal proper subgroups; empty exactly for the trivial group."""
    masks = None if subgroups is None else [s.bits for s in subgroups]
    return [ElementSet(group, m) for m in maximal_subgroup_masks(group, masks)]


@dataclass(frozen=True)
class SubgroupFamily:
    """Subgroup families of one group, each sorted by (cardinality, bitmask).

    `intersections` is the closure of `maximal` under intersection, `withG`
    is that family plus the whole group, and `frattini` is the intersection
    of all maximal subgroups (the whole group when there are none).
    """

    group: GroupTable
    all: tuple[ElementSet, ...]
    maximal: tuple[ElementSet, ...]
    intersections: tuple[ElementSet, ...]
    withG: tuple[ElementSet, ...]
    frattini: ElementSet

    def member_masks(self) -> list[int]:
        return [s.bits for s in self.withG]

    def maximal_masks(self) -> list[int]:
        return [s.bits for s in self.maximal]


def intersection_family(group: GroupTable, subgroups: list[ElementSet] | None = None) -> SubgroupFamily:
    """Close the maximal subgroups under pairwise intersection.

    The pairwise fixpoint equals the family of intersections over all
    nonempty subsets of maximals because intersection is associative,
    commutative, and idempotent.  For the trivial group there are no
    maximal subgroups and the empty intersection is the whole group.
    """
    sub_masks = [s.bits for s in subgroups] if subgroups is not None else all_subgroup_masks(group)
    full = (1 << group.order) - 1
    max_masks = maximal_subgroup_masks(group, sub_masks)

    inter: set[int] = set(max_masks)
    frontier = list(inter)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in inter:
                c = a & b
                if c not in inter and c not in fresh:
                    fresh.add(c)
        inter |= fresh
        frontier = list(fresh)

    frattini = full
    for m in max_masks:
        frattini &= m

    wrap = lambda masks: tuple(ElementSet(group, m) for m in _sorted_masks(masks))
    return SubgroupFamily(
        group=group,
        all=wrap(sub_masks),
        maximal=wrap(max_masks),
        intersections=wrap(inter),
        withG=wrap(set(inter) | {full}),
        frattini=ElementSet(group, frattini),
    )


def ceil_mask(maximal_masks: list[int], full: int, bits: int) -> int:
    """Smallest family member containing the subset given as a bitmask.

    Every proper family member is an intersection of maximal subgroups, so
    intersecting the maximal subgroups that contain the subset yields the
    least member containing it (the whole group when none does).
    """
    out = full
    for m in maximal_masks:
        if bits & ~m == 0:
            out &= m
    return out


def closure_ceil(family: SubgroupFamily, subset: ElementSet) -> ElementSet:
    """Least member of family.withG containing the subset."""
    if subset.group is not family.group:
        raise ValueError("subset belongs to a different group")
    full = (1 << family.group.order) - 1
    return ElementSet(family.group, ceil_mask(family.maximal_masks(), full, subset.bits))
