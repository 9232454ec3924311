"""Construction and verification of the gradient matching on a cell table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .cells import (Cell, CellTable, cell_to_string, delete_vertex, facets,
                    insert_vertex)

CRITICAL = "critical"
REDUNDANT = "redundant"
COLLAPSIBLE = "collapsible"


class Match(NamedTuple):
    lower: Cell
    upper: Cell
    coordinate: int
    vertex: int


def _insertion_data(lower: Cell, upper: Cell) -> tuple[int, int]:
    """Recover (coordinate, vertex) from a matched pair of cells."""
    if len(lower) != len(upper):
        raise ValueError("matched cells must have the same coordinate count")
    found = None
    for i, (lo, hi) in enumerate(zip(lower, upper), start=1):
        if lo == hi:
            continue
        extra = set(hi) - set(lo)
        if len(hi) != len(lo) + 1 or len(extra) != 1 or not set(lo) <= set(hi):
            raise ValueError(f"{upper} does not extend {lower} by one vertex")
        if found is not None:
            raise ValueError(f"{upper} differs from {lower} in several coordinates")
        found = (i, extra.pop())
    if found is None:
        raise ValueError("matched cells are equal")
    return found


class DiscreteField:
    """A matching of facet pairs (lower, upper) on the cells of a table.

    Every matched pair differs by one vertex inserted into one coordinate,
    and each cell belongs to at most one pair. Unmatched cells are critical,
    lower ends are redundant, upper ends are collapsible. Matches are kept in
    the order they were added, which for build_field is the construction
    order of the algorithm.
    """

    def __init__(self, table: CellTable, matches: Iterable = ()):
        self.table = table
        self.matches: list[Match] = []
        self._by_lower: dict[Cell, Match] = {}
        self._by_upper: dict[Cell, Match] = {}
        for m in matches:
            if len(m) == 2:
                lower, upper = m
                coordinate, vertex = _insertion_data(lower, upper)
            else:
                lower, upper, coordinate, vertex = m
            self.add_match(lower, upper, coordinate, vertex)

    def add_match(self, lower: Cell, upper: Cell, coordinate: int, vertex: int) -> None:
        if lower not in self.table or upper not in self.table:
            raise ValueError("matched cells must belong to the table")
        expected = insert_vertex(lower, coordinate, vertex, self.table.complex)
        if expected != upper:
            raise ValueError(
                f"{upper} is not {lower} with vertex {vertex} inserted "
                f"at coordinate {coordinate}")
        for cell in (lower, upper):
            if cell in self._by_lower or cell in self._by_upper:
                raise ValueError(f"cell already matched: {cell}")
        m = Match(lower, upper, coordinate, vertex)
        self.matches.append(m)
        self._by_lower[lower] = m
        self._by_upper[upper] = m

    def match_of(self, cell: Cell) -> Match | None:
        """The match containing the cell in either role, or None."""
        return self._by_lower.get(cell) or self._by_upper.get(cell)

    def status(self, cell: Cell) -> str:
        if cell in self._by_lower:
            return REDUNDANT
        if cell in self._by_upper:
            return COLLAPSIBLE
        if cell not in self.table:
            raise KeyError(f"not a cell of the table: {cell}")
        return CRITICAL

    def is_critical(self, cell: Cell) -> bool:
        return self.status(cell) == CRITICAL

    def critical_cells(self, dim: int | None = None) -> list[Cell]:
        """Critical cells in increasing cell order, optionally one dimension."""
        dims = range(self.table.top_dimension + 1) if dim is None else (dim,)
        out = []
        for p in dims:
            for cell in self.table.cells(p):
                if cell not in self._by_lower and cell not in self._by_upper:
                    out.append(cell)
        return out

    def __repr__(self):
        return (f"DiscreteField({len(self.matches)} matches, "
                f"{len(self.table) - 2 * len(self.matches)} critical cells)")


def build_field(table: CellTable) -> DiscreteField:
    """Run the matching construction over the table.

    Lower dimensions p are processed from one below the top dimension down to
    zero. For fixed p, insertion coordinates r run from the last to the
    first, and insertion vertices u from the largest label down to 1. For
    fixed (p, r, u), the p-cells are scanned in increasing cell order, and a
    pair (alpha, alpha with u inserted at coordinate r) is matched as soon as
    both ends are still unmatched at the moment of the scan. The scan order
    is part of the contract: it determines the field, and the checkers below
    rely on the resulting timing discipline.
    """
    cx = table.complex
    field = DiscreteField(table)
    top = table.top_dimension
    if top < 0:
        return field
    available: list[set[Cell]] = [set(table.cells(p)) for p in range(top + 1)]
    for p in range(top - 1, -1, -1):
        lower_avail = available[p]
        upper_avail = available[p + 1]
        if not lower_avail or not upper_avail:
            continue
        for r in range(table.n, 0, -1):
            if not lower_avail or not upper_avail:
                break
            for u in range(cx.vertex_count, 0, -1):
                if not lower_avail or not upper_avail:
                    break
                for alpha in table.cells(p):
                    if alpha not in lower_avail:
                        continue
                    beta = insert_vertex(alpha, r, u, cx)
                    if beta is None or beta not in upper_avail:
                        continue
                    field.add_match(alpha, beta, r, u)
                    lower_avail.discard(alpha)
                    upper_avail.discard(beta)
    return field


def check_acyclic(field: DiscreteField, table: CellTable | None = None) -> bool:
    """True when climbing matches and dropping to facets never loops.

    For each dimension p this walks the directed graph on p-cells with an
    edge from alpha to every facet of alpha's matched upper cell other than
    alpha itself, and looks for a directed cycle.
    """
    table = table or field.table
    by_dim: dict[int, list[Match]] = {}
    for m in field.matches:
        by_dim.setdefault(table.position(m.lower)[0], []).append(m)
    for matches in by_dim.values():
        succ: dict[Cell, list[Cell]] = {}
        for m in matches:
            succ[m.lower] = [a for a, _ in facets(m.upper) if a != m.lower]
        color: dict[Cell, int] = {}
        for root in succ:
            if color.get(root, 0):
                continue
            color[root] = 1
            stack = [(root, iter(succ[root]))]
            while stack:
                node, it = stack[-1]
                child = next(it, None)
                if child is None:
                    color[node] = 2
                    stack.pop()
                    continue
                c = color.get(child, 0)
                if c == 1:
                    return False
                if c == 0 and child in succ:
                    color[child] = 1
                    stack.append((child, iter(succ[child])))
    return True


def check_maximal(field: DiscreteField, table: CellTable | None = None) -> bool:
    """No facet and no 1-cofacet of a critical cell is critical."""
    table = table or field.table
    cx = table.complex
    for cell in field.critical_cells():
        for f, _ in facets(cell):
            if field.status(f) == CRITICAL:
                return False
        for i in range(1, table.n + 1):
            for v in range(1, cx.vertex_count + 1):
                coface = insert_vertex(cell, i, v, cx)
                if coface is not None and field.status(coface) == CRITICAL:
                    return False
    return True


def check_forced_redundancy(field: DiscreteField, table: CellTable | None = None) -> bool:
    """Later-ordered facets of a matched upper cell must be matched later.

    For a match inserting vertex v at coordinate i, consider any facet of the
    upper cell obtained by dropping w from coordinate j where (i, v) precedes
    (j, w), meaning i < j, or i == j with v < w. Each such facet must itself
    be redundant, through an insertion (k, u) that follows (j, w) in the same
    sense. This is the timing discipline the construction order guarantees.
    """
    table = table or field.table
    for m in field.matches:
        for j, coord in enumerate(m.upper, start=1):
            if len(coord) < 2:
                continue
            for w in coord:
                if not (m.coordinate < j or (m.coordinate == j and m.vertex < w)):
                    continue
                gamma = delete_vertex(m.upper, j, w)
                gm = field.match_of(gamma)
                if gm is None or gm.lower != gamma:
                    return False
                if not (j < gm.coordinate or (j == gm.coordinate and w < gm.vertex)):
                    return False
    return True


@dataclass(frozen=True)
class FieldReport:
    """Per-dimension status counts plus the two structural check flags."""

    counts: tuple[tuple[int, int, int], ...]  # (critical, redundant, collapsible)
    critical_cells: tuple[Cell, ...]
    acyclic: bool
    maximal: bool

    @property
    def total_cells(self) -> int:
        return sum(sum(triple) for triple in self.counts)

    def critical_count(self, p: int) -> int:
        return self.counts[p][0] if 0 <= p < len(self.counts) else 0

    def to_json_dict(self) -> dict:
        return {
            "dimensions": [
                {"dim": p, "critical": c, "redundant": r, "collapsible": k}
                for p, (c, r, k) in enumerate(self.counts)
            ],
            "critical_cells": [cell_to_string(c) for c in self.critical_cells],
            "acyclic": self.acyclic,
            "maximal": self.maximal,
        }


def classify(field: DiscreteField) -> FieldReport:
    """Aggregate cell statuses per dimension and run the structural checks."""
    table = field.table
    counts = []
    criticals: list[Cell] = []
    for p in range(table.top_dimension + 1):
        c = r = k = 0
        for cell in table.cells(p):
            s = field.status(cell)
            if s == CRITICAL:
                c += 1
                criticals.append(cell)
            elif s == REDUNDANT:
                r += 1
            else:
                k += 1
        counts.append((c, r, k))
    return FieldReport(tuple(counts), tuple(criticals),
                       check_acyclic(field), check_maximal(field))


def field_dot(field: DiscreteField, dimensions: Iterable[int] | None = None) -> str:
    """Graphviz rendering: match edges point upward, facet edges downward.

    Critical cells get a double border. When dimensions is given, only cells
    in those dimensions are drawn, together with the edges between them.
    """
    table = field.table
    if dimensions is None:
        dims = set(range(table.top_dimension + 1))
    else:
        dims = set(dimensions)
    lines = ["digraph gradient_field {", "  node [shape=box];"]
    for p in sorted(dims):
        names = []
        for cell in table.cells(p):
            label = cell_to_string(cell)
            names.append(label)
            if field.status(cell) == CRITICAL:
                lines.append(f'  "{label}" [peripheries=2];')
            else:
                lines.append(f'  "{label}";')
        if names:
            joined = "; ".join(f'"{n}"' for n in names)
            lines.append(f"  {{ rank=same; {joined}; }}")
    for p in sorted(dims):
        if p - 1 not in dims:
            continue
        for cell in table.cells(p):
            upper = cell_to_string(cell)
            m = field.match_of(cell)
            matched_lower = m.lower if m is not None and m.upper == cell else None
            for f, _ in facets(cell):
                lower = cell_to_string(f)
                if f == matched_lower:
                    lines.append(f'  "{lower}" -> "{upper}" [color=red penwidth=2];')
                else:
                    lines.append(f'  "{upper}" -> "{lower}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
