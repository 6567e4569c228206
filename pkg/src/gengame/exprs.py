"""Group-expression grammar, builders, and catalog files.

Grammar, whitespace-insensitive around the product operator:

    expr  := atom ('x' atom)*            products, left-associative
    atom  := base ('^' INT)?             power binds tighter than 'x'
    base  := '1' | 'Z' INT | 'D' INT | 'S' INT | 'A' INT | 'Q8'
           | 'perm(' INT (';' cycles)+ ')'
           | 'cayley(' path ')'

Each cycles item is a product of cycles like (0 1 2)(3 4) on points
0..degree-1.  D n is the dihedral group of order 2n.  Catalog files hold
one expression per line with an optional trailing *k expected nim-value
and '#' comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

from .groups import (
    GroupTable,
    cyclic_group,
    direct_product,
    group_from_cayley_file,
    group_from_permutations,
)


class ExprSyntaxError(ValueError):
    """Group-expression syntax error, with the offending column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


class CatalogFormatError(ValueError):
    """Malformed catalog line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Power:
    base: "GroupExpr"
    k: int


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class Perm:
    degree: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]  # per generator, its cycles


@dataclass(frozen=True)
class CayleyFile:
    path: str


@dataclass(frozen=True)
class Named:
    name: str  # D<n>, S<n>, A<n>, or Q8


GroupExpr = Union[Trivial, Cyclic, Power, Product, Perm, CayleyFile, Named]


# ---------------------------------------------------------------------------
# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}, found {self.peek()!r}")
        self.pos += 1

    def match_word(self, word: str) -> bool:
        if self.text.startswith(word, self.pos):
            self.pos += len(word)
            return True
        return False

    def read_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])


def _parse_cycles(sc: _Scanner, degree: int) -> tuple[tuple[int, ...], ...]:
    cycles = []
    sc.skip_ws()
    while sc.peek() == "(":
        sc.take()
        points = []
        while True:
            sc.skip_ws()
            if sc.peek() == ")":
                sc.take()
                break
            p = sc.read_int()
            if p >= degree:
                raise sc.error(f"point {p} out of range for degree {degree}")
            points.append(p)
        if not points:
            raise sc.error("empty cycle")
        if len(set(points)) != len(points):
            raise sc.error(f"repeated point in cycle {tuple(points)}")
        cycles.append(tuple(points))
        sc.skip_ws()
    if not cycles:
        raise sc.error("expected a cycle like (0 1 2)")
    return tuple(cycles)


def _parse_base(sc: _Scanner) -> GroupExpr:
    sc.skip_ws()
    start = sc.pos
    if sc.match_word("perm("):
        degree = sc.read_int()
        if degree < 1:
            sc.pos = start
            raise sc.error("permutation degree must be positive")
        gens = []
        sc.skip_ws()
        while sc.peek() == ";":
            sc.take()
            gens.append(_parse_cycles(sc, degree))
            sc.skip_ws()
        sc.expect(")")
        return Perm(degree, tuple(gens))
    if sc.match_word("cayley("):
        end = sc.text.find(")", sc.pos)
        if end < 0:
            raise sc.error("unterminated cayley(...)")
        path = sc.text[sc.pos:end].strip()
        if not path:
            raise sc.error("empty path in cayley(...)")
        sc.pos = end + 1
        return CayleyFile(path)
    ch = sc.peek()
    if ch == "1":
        sc.take()
        if sc.peek().isdigit():
            raise sc.error("the trivial group is written as a bare 1")
        return Trivial()
    if ch == "Z":
        sc.take()
        n = sc.read_int()
        if n < 1:
            sc.pos = start
            raise sc.error("cyclic order must be positive")
        return Cyclic(n)
    if ch in "DSA":
        sc.take()
        n = sc.read_int()
        if n < 1:
            sc.pos = start
            raise sc.error(f"{ch}<n> needs a positive n")
        return Named(f"{ch}{n}")
    if ch == "Q":
        if sc.match_word("Q8"):
            return Named("Q8")
        raise sc.error("only Q8 is available in the Q family")
    raise sc.error(f"expected a group expression, found {ch!r}" if ch else "unexpected end of input")


def _parse_atom(sc: _Scanner) -> GroupExpr:
    node = _parse_base(sc)
    sc.skip_ws()
    if sc.peek() == "^":
        sc.take()
        sc.skip_ws()
        k = sc.read_int()
        if k < 1:
            raise sc.error("exponent must be positive")
        node = Power(node, k)
    return node


def parse_group_expr(text: str) -> GroupExpr:
    """Parse a group expression; products are left-associative."""
    sc = _Scanner(text)
    node = _parse_atom(sc)
    while True:
        sc.skip_ws()
        if sc.peek() == "x":
            sc.take()
            node = Product(node, _parse_atom(sc))
        elif sc.peek():
            raise sc.error(f"trailing input starting at {sc.peek()!r}")
        else:
            return node


def render_expr(expr: GroupExpr) -> str:
    """Canonical text form; parse(render(e)) == e."""
    if isinstance(expr, Trivial):
        return "1"
    if isinstance(expr, Cyclic):
        return f"Z{expr.n}"
    if isinstance(expr, Power):
        return f"{render_expr(expr.base)}^{expr.k}"
    if isinstance(expr, Product):
        return f"{render_expr(expr.left)} x {render_expr(expr.right)}"
    if isinstance(expr, Perm):
        gens = "; ".join(
            "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in gen)
            for gen in expr.generators
        )
        return f"perm({expr.degree}; {gens})" if gens else f"perm({expr.degree};)"
    if isinstance(expr, CayleyFile):
        return f"cayley({expr.path})"
    if isinstance(expr, Named):
        return expr.name
    raise TypeError(f"not a group expression: {expr!r}")


# ---------------------------------------------------------------------------
# building


def _perm_from_cycles(degree: int, cycles: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    # cycles compose right-to-left, as in standard notation
    out = []
    for x in range(degree):
        y = x
        for cyc in reversed(cycles):
            if y in cyc:
                y = cyc[(cyc.index(y) + 1) % len(cyc)]
        out.append(y)
    return tuple(out)


def _dicyclic_rows(n: int) -> list[list[int]]:
    """Multiplication table of the dicyclic group of order 4n.

    Elements a^i b^j (i < 2n, j < 2) indexed i + 2n*j, with b^2 = a^n and
    b a = a^-1 b; n = 2 gives the quaternion group.
    """
    m = 2 * n
    size = 4 * n
    rows = [[0] * size for _ in range(size)]
    for i1 in range(m):
        for j1 in (0, 1):
            for i2 in range(m):
                for j2 in (0, 1):
                    if j1 == 0:
                        i, j = (i1 + i2) % m, j2
                    elif j2 == 0:
                        i, j = (i1 - i2) % m, 1
                    else:
                        i, j = (i1 - i2 + n) % m, 0
                    rows[i1 + m * j1][i2 + m * j2] = i + m * j
    return rows


def _build_named(name: str, max_order: int | None) -> GroupTable:
    kind, rest = name[0], name[1:]
    if name == "Q8":
        return GroupTable(_dicyclic_rows(2), source="table", name="Q8",
                          max_order=max_order)
    n = int(rest)
    if kind == "D":
        if n == 1:
            gens = [(1, 0)]
            degree = 2
        elif n == 2:
            gens = [(1, 0, 2, 3), (0, 1, 3, 2)]
            degree = 4
        else:
            rot = tuple((i + 1) % n for i in range(n))
            flip = tuple((n - i) % n for i in range(n))
            gens = [rot, flip]
            degree = n
        return group_from_permutations(degree, gens, max_order)
    if kind == "S":
        if n == 1:
            return group_from_permutations(1, [], max_order)
        cycle = tuple((i + 1) % n for i in range(n))
        swap = (1, 0) + tuple(range(2, n))
        return group_from_permutations(n, [swap, cycle], max_order)
    if kind == "A":
        if n <= 2:
            return group_from_permutations(max(n, 1), [], max_order)
        three = _perm_from_cycles(n, ((0, 1, 2),))
        if n == 3:
            gens = [three]
        elif n % 2 == 1:
            gens = [three, tuple((i + 1) % n for i in range(n))]
        else:
            gens = [three, (0,) + tuple(1 + (i + 1) % (n - 1) for i in range(n - 1))]
        return group_from_permutations(n, gens, max_order)
    raise ValueError(f"unknown named group {name!r}")


def build_group(expr: GroupExpr, max_order: int | None = None) -> GroupTable:
    """Construct the group an expression denotes; its name is the canonical
    rendering of the expression."""
    table = _build(expr, max_order)
    table.name = render_expr(expr)
    return table


def _build(expr: GroupExpr, max_order: int | None) -> GroupTable:
    if isinstance(expr, Trivial):
        return cyclic_group(1, max_order)
    if isinstance(expr, Cyclic):
        return cyclic_group(expr.n, max_order)
    if isinstance(expr, Power):
        out = _build(expr.base, max_order)
        for _ in range(expr.k - 1):
            out = direct_product(out, _build(expr.base, max_order), max_order)
        return out
    if isinstance(expr, Product):
        return direct_product(_build(expr.left, max_order), _build(expr.right, max_order), max_order)
    if isinstance(expr, Perm):
        gens = [_perm_from_cycles(expr.degree, cycles) for cycles in expr.generators]
        return group_from_permutations(expr.degree, gens, max_order)
    if isinstance(expr, CayleyFile):
        return group_from_cayley_file(Path(expr.path).read_text(), max_order)
    if isinstance(expr, Named):
        return _build_named(expr.name, max_order)
    raise TypeError(f"not a group expression: {expr!r}")


def product_split(expr: GroupExpr) -> tuple[GroupExpr, GroupExpr] | None:
    """Split a product-shaped expression into (left, right) factors."""
    if isinstance(expr, Product):
        return expr.left, expr.right
    if isinstance(expr, Power) and expr.k >= 2:
        left = expr.base if expr.k == 2 else Power(expr.base, expr.k - 1)
        return left, expr.base
    return None


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class CatalogEntry:
    expr: GroupExpr
    text: str  # canonical rendering
    expected_nim: int | None
    line_no: int


_EXPECTED_RE = re.compile(r"\s\*(\d+)\s*$")


def parse_catalog(text: str) -> list[CatalogEntry]:
    """One entry per non-comment line: expression, optional trailing *k."""
    entries = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        expected = None
        m = _EXPECTED_RE.search(line)
        if m:
            expected = int(m.group(1))
            line = line[:m.start()].strip()
        try:
            expr = parse_group_expr(line)
        except ExprSyntaxError as exc:
            raise CatalogFormatError(str(exc), line=ln) from None
        entries.append(CatalogEntry(expr=expr, text=render_expr(expr),
                                    expected_nim=expected, line_no=ln))
    return entries


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    return parse_catalog(Path(path).read_text())


def default_catalog_path() -> Path:
    """Path of the bundled catalog covering every closed-form case."""
    return Path(str(resources.files("gengame") / "data" / "default.catalog"))
