"""Finite groups as explicit multiplication tables, 0-based element indices.

Element 0 is always the identity; constructors reorder elements to make it
so.  Subsets of a group are bitmasks over element indices wrapped in
ElementSet.  Tables and subsets are immutable after construction, so every
operation here is a pure function and safe to share across workers.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 256


class ResourceLimitError(RuntimeError):
    """A configured size bound (group order, search frontier) was exceeded."""


class CayleyFormatError(ValueError):
    """Malformed Cayley-table document."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GroupValidationError(ValueError):
    """A multiplication table violates the group axioms."""


def _check_order(n: int, max_order: int | None) -> None:
    cap = DEFAULT_MAX_ORDER if max_order is None else max_order
    if n > cap:
        raise ResourceLimitError(f"group order {n} exceeds the cap {cap}")


class GroupTable:
    """A finite group given by its full multiplication table.

    mul[i][j] is the index of the product of elements i and j.  Rows and
    columns must be permutations, element 0 must be the identity, and for
    sources where associativity is not guaranteed by construction it is
    checked on every triple.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]] | np.ndarray,
        labels: Sequence[str] | None = None,
        source: str = "table",
        name: str | None = None,
        *,
        max_order: int | None = None,
        check_associativity: bool = True,
    ):
        table = np.asarray(mul, dtype=np.int16)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupValidationError(f"table must be square, got shape {table.shape}")
        n = int(table.shape[0])
        if n == 0:
            raise GroupValidationError("a group has at least one element")
        _check_order(n, max_order)
        if table.min() < 0 or table.max() >= n:
            raise GroupValidationError("table entries must be element indices 0..n-1")

        idx = np.arange(n, dtype=np.int16)
        if not (np.sort(table, axis=1) == idx).all():
            bad = int(np.flatnonzero((np.sort(table, axis=1) != idx).any(axis=1))[0])
            raise GroupValidationError(f"row {bad} is not a permutation of 0..{n - 1}")
        if not (np.sort(table, axis=0) == idx[:, None]).all():
            bad = int(np.flatnonzero((np.sort(table, axis=0) != idx[:, None]).any(axis=0))[0])
            raise GroupValidationError(f"column {bad} is not a permutation of 0..{n - 1}")
        if not ((table[0] == idx).all() and (table[:, 0] == idx).all()):
            raise GroupValidationError("element 0 must be the identity")
        if check_associativity:
            left = table[table]        # left[a,b,c]  = (a*b)*c
            right = table[:, table]    # right[a,b,c] = a*(b*c)
            if not (left == right).all():
                a, b, c = (int(v) for v in np.argwhere(left != right)[0])
                raise GroupValidationError(
                    f"associativity fails at triple ({a},{b},{c}): "
                    f"({a}*{b})*{c}={int(left[a, b, c])} but {a}*({b}*{c})={int(right[a, b, c])}"
                )

        self.order = n
        self.identity = 0
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in table)
        self.inverse: tuple[int, ...] = tuple(int(np.flatnonzero(table[x] == 0)[0]) for x in range(n))
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GroupValidationError(f"expected {n} labels, got {len(labels)}")
        self.labels: tuple[str, ...] = tuple(str(s) for s in labels)
        self.source = source
        self.name = name if name is not None else f"{source}<{n}>"
        table.setflags(write=False)
        self._mul_np = table

    def mult(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def empty_set(self) -> "ElementSet":
        return ElementSet(self, 0)

    def full_set(self) -> "ElementSet":
        return ElementSet(self, (1 << self.order) - 1)

    def subset(self, indices: Iterable[int]) -> "ElementSet":
        return ElementSet.from_indices(self, indices)

    def same_table(self, other: "GroupTable") -> bool:
        """True when the two groups have identical multiplication tables."""
        return self.order == other.order and self.mul == other.mul

    def __repr__(self) -> str:
        return f"<GroupTable {self.name} order={self.order}>"


class ElementSet:
    """Immutable subset of a group's elements, stored as a bitmask.

    Two sets compare equal only when they belong to the same GroupTable
    object; set algebra across distinct groups is a bug, not a coercion.
    """

    __slots__ = ("bits", "group")

    def __init__(self, group: GroupTable, bits: int = 0):
        if bits < 0 or bits >> group.order:
            raise ValueError(f"bitmask {bits:#x} out of range for order {group.order}")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "group", group)

    def __setattr__(self, *_):
        raise AttributeError("ElementSet is immutable")

    @classmethod
    def from_indices(cls, group: GroupTable, indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            if not 0 <= i < group.order:
                raise ValueError(f"element index {i} out of range for order {group.order}")
            bits |= 1 << i
        return cls(group, bits)

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def union(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet(self.group, self.bits | other.bits)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet(self.group, self.bits & other.bits)

    def difference(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet(self.group, self.bits & ~other.bits)

    def complement(self) -> "ElementSet":
        return ElementSet(self.group, ~self.bits & ((1 << self.group.order) - 1))

    def with_element(self, g: int) -> "ElementSet":
        if not 0 <= g < self.group.order:
            raise ValueError(f"element index {g} out of range")
        return ElementSet(self.group, self.bits | (1 << g))

    def issubset(self, other: "ElementSet") -> bool:
        self._check_same_group(other)
        return self.bits & ~other.bits == 0

    def _check_same_group(self, other: "ElementSet") -> None:
        if self.group is not other.group:
            raise ValueError("element sets belong to different groups")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return self.union(other)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return self.intersection(other)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return self.difference(other)

    def __le__(self, other: "ElementSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "ElementSet") -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, g: int) -> bool:
        return 0 <= g < self.group.order and (self.bits >> g) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.bits
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.group is other.group
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.bits, id(self.group)))

    def __repr__(self) -> str:
        inner = ",".join(self.group.labels[i] for i in self)
        return f"{{{inner}}}"


# ---------------------------------------------------------------------------
# constructors


def cyclic_group(n: int, max_order: int | None = None) -> GroupTable:
    """The cyclic group of order n with mul[i][j] = (i+j) mod n."""
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    _check_order(n, max_order)
    idx = np.arange(n, dtype=np.int16)
    table = (idx[:, None] + idx[None, :]) % n
    return GroupTable(table, source="cyclic", name=f"Z{n}", max_order=max_order,
                      check_associativity=False)


def direct_product(g: GroupTable, h: GroupTable, max_order: int | None = None) -> GroupTable:
    """Direct product with element (a,b) indexed as a*|H| + b."""
    n = g.order * h.order
    _check_order(n, max_order)
    nh = h.order
    gm = g._mul_np.astype(np.int32)
    hm = h._mul_np.astype(np.int32)
    table = (gm[:, None, :, None] * nh + hm[None, :, None, :]).reshape(n, n)
    labels = [f"({gl},{hl})" for gl in g.labels for hl in h.labels]
    return GroupTable(table, labels=labels, source="product",
                      name=f"{g.name} x {h.name}", max_order=max_order,
                      check_associativity=False)


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            cur = perm[cur]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "e"


def group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    max_order: int | None = None,
) -> GroupTable:
    """Close a set of permutations of 0..degree-1 under composition.

    Elements are the distinct permutations in breadth-first discovery
    order, identity first; the product p*q maps i to p[q[i]].
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    gens = []
    for k, raw in enumerate(generators):
        p = tuple(int(v) for v in raw)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"generator {k} is not a permutation of 0..{degree - 1}: {raw}")
        gens.append(p)

    cap = DEFAULT_MAX_ORDER if max_order is None else max_order
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[i]] for i in range(degree))
                if r not in index:
                    index[r] = len(elems)
                    elems.append(r)
                    nxt.append(r)
                    if len(elems) > cap:
                        raise ResourceLimitError(
                            f"permutation closure exceeds the order cap {cap}"
                        )
        frontier = nxt

    n = len(elems)
    table = np.empty((n, n), dtype=np.int16)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    labels = [_cycle_notation(p) for p in elems]
    return GroupTable(table, labels=labels, source="permutation",
                      name=f"perm<{degree};{n}>", max_order=max_order)


def group_from_cayley_file(text: str, max_order: int | None = None) -> GroupTable:
    """Parse the Cayley file format.

    Line 1 is the order n; lines 2..n+1 hold n whitespace-separated 0-based
    indices each (row i gives the products i*j); '#' starts a comment line;
    element 0 must be the identity.
    """
    rows: list[tuple[int, list[str]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            rows.append((ln, stripped.split()))
    if not rows:
        raise CayleyFormatError("empty document")

    ln, head = rows[0]
    if len(head) != 1:
        raise CayleyFormatError("first line must hold the order alone", line=ln)
    try:
        n = int(head[0])
    except ValueError:
        raise CayleyFormatError(f"order is not an integer: {head[0]!r}", line=ln) from None
    if n < 1:
        raise CayleyFormatError(f"order must be positive, got {n}", line=ln)
    if len(rows) - 1 != n:
        raise CayleyFormatError(
            f"expected {n} table rows, found {len(rows) - 1}", line=rows[-1][0]
        )

    table = []
    for ln, tokens in rows[1:]:
        if len(tokens) != n:
            raise CayleyFormatError(f"expected {n} entries, found {len(tokens)}", line=ln)
        try:
            entries = [int(t) for t in tokens]
        except ValueError:
            raise CayleyFormatError(f"non-integer entry in row: {tokens}", line=ln) from None
        for v in entries:
            if not 0 <= v < n:
                raise CayleyFormatError(f"entry {v} out of range 0..{n - 1}", line=ln)
        table.append(entries)
    return GroupTable(table, source="file", name=f"cayley<{n}>", max_order=max_order)


# ---------------------------------------------------------------------------
# generated subgroups


def closure_mask(group: GroupTable, seed_bits: int) -> int:
    """Bitmask of the subgroup generated by the elements in seed_bits.

    Multiplicative closure suffices: in a finite group the powers of x
    cycle, so inverses appear automatically.  The kernel squares the
    current product set each round and stabilizes in O(log n) rounds.
    """
    n = group.order
    if seed_bits >> n:
        raise ValueError(f"seed bitmask {seed_bits:#x} out of range for order {n}")
    mul = group._mul_np
    inset = np.zeros(n, dtype=bool)
    inset[group.identity] = True
    m = seed_bits
    while m:
        low = m & -m
        inset[low.bit_length() - 1] = True
        m ^= low
    count = int(inset.sum())
    while True:
        elems = np.flatnonzero(inset)
        inset[mul[np.ix_(elems, elems)].ravel()] = True
        grown = int(inset.sum())
        if grown == count:
            break
        count = grown
    out = 0
    for i in np.flatnonzero(inset):
        out |= 1 << int(i)
    return out


def generated_subgroup(group: GroupTable, subset: ElementSet) -> ElementSet:
    """Smallest subgroup containing the given subset."""
    if subset.group is not group:
        raise ValueError("subset belongs to a different group")
    return ElementSet(group, closure_mask(group, subset.bits))


def element_order(group: GroupTable, x: int) -> int:
    """Least k >= 1 with x^k = identity."""
    if not 0 <= x < group.order:
        raise ValueError(f"element index {x} out of range")
    k = 1
    cur = x
    while cur != group.identity:
        cur = group.mul[cur][x]
        k += 1
    return k


def min_generating_size(group: GroupTable) -> int:
    """Size of a smallest generating set; 0 for the trivial group.

    Breadth-first search over generated subgroups, one added generator per
    level, deduplicating states; extending only by elements outside the
    current subgroup is exhaustive because inside elements are redundant.
    """
    full = (1 << group.order) - 1
    base = closure_mask(group, 0)
    if base == full:
        return 0
    joins: dict[int, int] = {}
    seen = {base}
    frontier = [base]
    k = 0
    while frontier:
        k += 1
        nxt = []
        for sub in frontier:
            rest = full & ~sub
            while rest:
                low = rest & -rest
                rest ^= low
                seed = sub | low
                grown = joins.get(seed)
                if grown is None:
                    grown = closure_mask(group, seed)
                    joins[seed] = grown
                if grown == full:
                    return k
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    raise AssertionError("unreachable: some elements always remain to add")


def subgroup_table(group: GroupTable, subgroup: ElementSet) -> GroupTable:
    """The subgroup as a standalone group, elements reindexed in mask order."""
    if subgroup.group is not group:
        raise ValueError("subgroup belongs to a different group")
    members = list(subgroup)
    if not members or members[0] != group.identity:
        raise ValueError("subgroup must contain the identity")
    pos = {g: i for i, g in enumerate(members)}
    k = len(members)
    table = [[0] * k for _ in range(k)]
    for i, a in enumerate(members):
        row = group.mul[a]
        for j, b in enumerate(members):
            p = row[b]
            if p not in pos:
                raise ValueError("element set is not closed under multiplication")
            table[i][j] = pos[p]
    labels = [group.labels[g] for g in members]
    return GroupTable(table, labels=labels, source="subgroup",
                      name=f"{group.name}|sub{k}", check_associativity=False)


def relabel(group: GroupTable, perm: Sequence[int], name: str | None = None) -> GroupTable:
    """Reindex elements by perm (old index -> new index); identity must map to 0."""
    n = group.order
    p = [int(v) for v in perm]
    if sorted(p) != list(range(n)):
        raise ValueError("perm is not a permutation of the element indices")
    if p[group.identity] != 0:
        raise ValueError("perm must map the identity to index 0")
    arr = np.asarray(p, dtype=np.int16)
    table = np.empty((n, n), dtype=np.int16)
    table[arr[:, None], arr[None, :]] = arr[group._mul_np]
    labels = [""] * n
    for old, new in enumerate(p):
        labels[new] = group.labels[old]
    return GroupTable(table, labels=labels, source=group.source,
                      name=name or f"{group.name}~relabeled",
                      check_associativity=False)
