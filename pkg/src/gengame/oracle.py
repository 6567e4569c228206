"""Brute-force ground truth for the achievement game.

Plain Sprague-Grundy values over the raw game tree of subset positions,
plus exhaustive deficiency search.  No structure-class machinery is used
on this side; the whole point is to be obviously correct so the engine can
be validated against it on small groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .groups import ElementSet, GroupTable, ResourceLimitError, closure_mask
from .lattice import ceil_mask, intersection_family

DEFAULT_ORACLE_CAP = 16


class GrundyMemo:
    """Grundy values of every subset position of one group.

    A generating set is terminal with value 0: the player who completed it
    has already won, and positions that are generating but unreachable in
    play never influence a reachable value.  Every nongenerating position
    takes the mex over all one-element extensions.
    """

    def __init__(self, group: GroupTable, cap: int = DEFAULT_ORACLE_CAP):
        if group.order > cap:
            raise ResourceLimitError(
                f"group order {group.order} exceeds the oracle cap {cap}"
            )
        self.group = group
        n = group.order
        size = 1 << n
        full = size - 1

        # <P> for every subset, one incremental join per position
        closure = [0] * size
        closure[0] = closure_mask(group, 0)
        joins: dict[tuple[int, int], int] = {}
        for pos in range(1, size):
            low = pos & -pos
            g = low.bit_length() - 1
            base = closure[pos ^ low]
            if (base >> g) & 1:
                closure[pos] = base
                continue
            key = (base, g)
            grown = joins.get(key)
            if grown is None:
                grown = closure_mask(group, base | low)
                joins[key] = grown
            closure[pos] = grown
        self.closure = closure

        values = [0] * size
        for pos in range(size - 1, -1, -1):
            if closure[pos] == full:
                continue
            seen = 0
            rest = full & ~pos
            while rest:
                low = rest & -rest
                rest ^= low
                seen |= 1 << values[pos | low]
            v = 0
            while (seen >> v) & 1:
                v += 1
            values[pos] = v
        self.values = values

    def value(self, position: ElementSet | int) -> int:
        bits = position.bits if isinstance(position, ElementSet) else position
        return self.values[bits]

    def is_generating(self, position: ElementSet | int) -> bool:
        bits = position.bits if isinstance(position, ElementSet) else position
        return self.closure[bits] == (1 << self.group.order) - 1

    def __getitem__(self, bits: int) -> int:
        return self.values[bits]


def grundy(group: GroupTable, position: ElementSet | int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Grundy value of one position; the value at the empty set is the
    nim-value of the whole game."""
    return GrundyMemo(group, cap).value(position)


def brute_deficiency(group: GroupTable, subset: ElementSet) -> int:
    """Exact deficiency of a subset by exhaustive k-subset search.

    Candidates already inside the generated subgroup are redundant (they
    add nothing to any closure), so searching subsets of the complement of
    <S> is still exhaustive.
    """
    full = (1 << group.order) - 1
    base = closure_mask(group, subset.bits)
    if base == full:
        return 0
    candidates = [g for g in range(group.order) if not (base >> g) & 1]
    for k in range(1, len(candidates) + 1):
        for combo in combinations(candidates, k):
            seed = subset.bits
            for g in combo:
                seed |= 1 << g
            if closure_mask(group, seed) == full:
                return k
    raise AssertionError("unreachable: adding every element generates the group")


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of sweeping every position against the engine's class types."""

    group: str
    positions: int
    violations: tuple[tuple[int, int, int], ...]  # (position bits, expected, actual)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_position_invariance(group: GroupTable, cap: int = DEFAULT_ORACLE_CAP) -> InvarianceReport:
    """Check that every position's Grundy value matches its class type.

    For each subset P the engine predicts the value from the class of the
    least family member containing P: the even entry of the type when |P|
    is even, the odd entry otherwise.  Any difference is recorded rather
    than raised.
    """
    from .achievement import nim_of_game

    memo = GrundyMemo(group, cap)
    report = nim_of_game(group)
    family = intersection_family(group)
    max_masks = family.maximal_masks()
    full = (1 << group.order) - 1
    type_by_mask = {cls.subgroup.bits: cls.type_triple for cls in report.classes}

    violations = []
    for pos in range(1 << group.order):
        trip = type_by_mask[ceil_mask(max_masks, full, pos)]
        expected = trip.a if pos.bit_count() % 2 == 0 else trip.b
        actual = memo.values[pos]
        if actual != expected:
            violations.append((pos, expected, actual))
    return InvarianceReport(group=group.name, positions=1 << group.order,
                            violations=tuple(violations))
