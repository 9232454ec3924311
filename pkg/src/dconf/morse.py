"""Gradient flow, path counting, and the chain complex on critical cells."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cells import Cell, CellTable, cell_to_string, facets
from .field import DiscreteField
from .homology import ChainComplex, SparseMatrix


def _flow(root: Cell, field: DiscreteField, memo: dict[Cell, dict[Cell, int]]) -> None:
    """Fill memo[root] with the critical-cell combination the flow reaches.

    A critical cell maps to itself, a collapsible cell to zero, and a
    redundant cell recurses through the other facets of its matched upper
    cell with the alternating-sign weights of the flow. Evaluation is
    iterative postorder; visiting a cell that is already on the evaluation
    path means the matching is not a gradient field.
    """
    if root in memo:
        return
    gray: set[Cell] = set()
    stack: list[Cell] = [root]
    while stack:
        x = stack[-1]
        if x in memo:
            stack.pop()
            continue
        m = field.match_of(x)
        if m is None:
            memo[x] = {x: 1}
            stack.pop()
            continue
        if m.upper == x:
            memo[x] = {}
            stack.pop()
            continue
        entries = facets(m.upper)
        if x not in gray:
            gray.add(x)
            pushed = False
            for f, _ in entries:
                if f != x and f not in memo:
                    if f in gray:
                        raise ValueError("field not gradient")
                    stack.append(f)
                    pushed = True
            if pushed:
                continue
        sign_x = next(s for f, s in entries if f == x)
        combo: dict[Cell, int] = {}
        for f, s in entries:
            if f == x:
                continue
            weight = -sign_x * s
            for crit, coef in memo[f].items():
                val = combo.get(crit, 0) + weight * coef
                if val:
                    combo[crit] = val
                else:
                    combo.pop(crit, None)
        memo[x] = combo
        gray.discard(x)
        stack.pop()


def flow_to_critical(cell: Cell, field: DiscreteField,
                     table: CellTable | None = None,
                     memo: dict[Cell, dict[Cell, int]] | None = None) -> dict[Cell, int]:
    """Integer combination of critical cells the gradient flow sends cell to.

    The coefficient of a critical cell equals the signed count of gradient
    paths from cell to it, plus one when cell is that critical cell itself.
    Passing a shared memo dictionary amortizes repeated queries.
    """
    if memo is None:
        memo = {}
    _flow(cell, field, memo)
    return dict(memo[cell])


@dataclass(frozen=True)
class MorseComplex:
    """Chain complex on the critical cells of a gradient field.

    bases[p] lists the critical p-cells in increasing cell order, and
    boundaries[p] holds the degree p to degree p-1 boundary in that basis,
    sparse, rows indexed by degree p-1.
    """

    bases: tuple[tuple[Cell, ...], ...]
    boundaries: tuple[SparseMatrix, ...]

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def to_chain_complex(self) -> ChainComplex:
        return ChainComplex(self.ranks(), self.boundaries)

    def boundary_rows(self, p: int) -> list[list[int]]:
        """Dense rows of the degree-p boundary (rows = degree p-1 basis)."""
        rows = [[0] * len(self.bases[p]) for _ in self.bases[p - 1]]
        for (i, j), v in self.boundaries[p].items():
            rows[i][j] = v
        return rows

    def text(self) -> str:
        """Plain-text dump: per degree, the basis size and the dense matrix."""
        lines = []
        for p in range(len(self.bases)):
            lines.append(f"degree {p}: {len(self.bases[p])} critical cells")
        for p in range(1, len(self.bases)):
            lines.append(f"boundary {p} ({len(self.bases[p - 1])} x {len(self.bases[p])}):")
            for row in self.boundary_rows(p):
                lines.append("  " + " ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        out = []
        for p in range(len(self.bases)):
            entry = {
                "dim": p,
                "basis": [cell_to_string(c) for c in self.bases[p]],
            }
            if p >= 1:
                entry["boundary"] = self.boundary_rows(p)
            out.append(entry)
        return {"degrees": out}


def morse_boundary(field: DiscreteField, table: CellTable | None = None) -> MorseComplex:
    """Assemble the chain complex on critical cells via the gradient flow.

    The column of a critical cell is the flow image of its cellular boundary,
    expressed in the critical basis one dimension down. Raises ValueError
    ("field not gradient") when the flow recursion detects a cycle.
    """
    table = table or field.table
    bases: list[tuple[Cell, ...]] = []
    for p in range(table.top_dimension + 1):
        bases.append(tuple(field.critical_cells(p)))
    while bases and not bases[-1]:
        bases.pop()
    memo: dict[Cell, dict[Cell, int]] = {}
    boundaries: list[SparseMatrix] = [dict() for _ in bases]
    for p in range(1, len(bases)):
        row_index = {cell: i for i, cell in enumerate(bases[p - 1])}
        entries = boundaries[p]
        for col, beta in enumerate(bases[p]):
            column: dict[Cell, int] = {}
            for f, s in facets(beta):
                _flow(f, field, memo)
                for crit, coef in memo[f].items():
                    val = column.get(crit, 0) + s * coef
                    if val:
                        column[crit] = val
                    else:
                        column.pop(crit, None)
            for crit, coef in column.items():
                entries[(row_index[crit], col)] = coef
    return MorseComplex(tuple(bases), tuple(boundaries))


def _lower_steps(x: Cell, field: DiscreteField) -> list[Cell]:
    """Targets reachable from x by one facet drop followed by its match."""
    out = []
    for f, _ in facets(x):
        m = field.match_of(f)
        if m is not None and m.lower == f and m.upper != x:
            out.append(m.upper)
    return out


def count_lower_paths(start: Cell, end: Cell, field: DiscreteField,
                      table: CellTable | None = None) -> int:
    """Number of alternating facet-then-match walks from start to end.

    Each step drops to a facet and climbs through that facet's match, so all
    stops have the dimension of start. Walks must take at least one step;
    start == end gives 0 because a round trip would be a cycle.
    """
    table = table or field.table
    if start not in table or end not in table:
        raise KeyError("start and end must be cells of the table")
    if table.position(start)[0] != table.position(end)[0]:
        return 0
    steps_cache: dict[Cell, list[Cell]] = {}

    def steps(x: Cell) -> list[Cell]:
        if x not in steps_cache:
            steps_cache[x] = _lower_steps(x, field)
        return steps_cache[x]

    memo: dict[Cell, int] = {}
    gray: set[Cell] = set()
    stack = [start]
    while stack:
        x = stack[-1]
        if x in memo:
            stack.pop()
            continue
        nxt = steps(x)
        if x not in gray:
            gray.add(x)
            pending = [y for y in nxt if y not in memo]
            for y in pending:
                if y in gray:
                    raise ValueError("field not gradient")
            if pending:
                stack.extend(pending)
                continue
        memo[x] = sum((1 if y == end else 0) + memo[y] for y in nxt)
        gray.discard(x)
        stack.pop()
    return memo[start]


def iter_lower_paths(start: Cell, end: Cell, field: DiscreteField) -> Iterator[tuple[Cell, ...]]:
    """Yield every lower path from start to end as an explicit cell sequence.

    Sequences alternate cells and the facets stepped through, starting at
    start and ending at end. Exhaustive, so only suitable for small tables;
    count_lower_paths is the fast route.
    """

    def walk(x: Cell, prefix: tuple[Cell, ...]) -> Iterator[tuple[Cell, ...]]:
        for f, _ in facets(x):
            m = field.match_of(f)
            if m is not None and m.lower == f and m.upper != x:
                seq = prefix + (f, m.upper)
                if m.upper == end:
                    yield seq
                yield from walk(m.upper, seq)

    yield from walk(start, (start,))


def iter_gradient_paths(start: Cell, field: DiscreteField) -> Iterator[tuple[tuple[Cell, ...], int]]:
    """Yield (cells, multiplicity) for every gradient path leaving start.

    A path climbs through the match of its current cell and drops to any
    other facet, repeatedly; every stopping point is yielded, prefixes before
    their extensions. The multiplicity is the product of the step weights.
    Exhaustive enumeration, kept as the slow cross-check for the flow.
    """
    m = field.match_of(start)
    if m is None or m.lower != start:
        return
    entries = facets(m.upper)
    sign_start = next(s for f, s in entries if f == start)
    for f, s in entries:
        if f == start:
            continue
        mult = -sign_start * s
        head = (start, m.upper, f)
        yield head, mult
        for tail, tmult in iter_gradient_paths(f, field):
            yield head + tail[1:], mult * tmult


def path_multiplicity_sum(start: Cell, end: Cell, field: DiscreteField) -> int:
    """Signed count over all explicit gradient paths from start to end."""
    return sum(mult for path, mult in iter_gradient_paths(start, field)
               if path[-1] == end)
