"""Cells of the discretized configuration space and their face operators.

A cell is an n-tuple of simplices with pairwise disjoint vertex sets, one
simplex per coordinate; its dimension is the sum of the coordinate
dimensions. Cells are ordered coordinate by coordinate, each coordinate under
the face order of the ambient complex.
"""

from __future__ import annotations

from bisect import bisect_left
from math import comb
from typing import Iterator

from .complexes import Simplex, SimplicialComplex, simplex_key

Cell = tuple[Simplex, ...]


def cell_dimension(cell: Cell) -> int:
    return sum(len(c) - 1 for c in cell)


def cell_key(cell: Cell):
    """Sort key: lexicographic over coordinates under the face order."""
    return tuple(simplex_key(c) for c in cell)


def cell_order(a: Cell, b: Cell) -> int:
    """Three-way comparison (-1/0/+1) of cells with the same coordinate count."""
    ka, kb = cell_key(a), cell_key(b)
    return (ka > kb) - (ka < kb)


def vertex_union(cell: Cell) -> set[int]:
    """All vertex labels used by the coordinates of the cell."""
    out: set[int] = set()
    for coord in cell:
        out.update(coord)
    return out


class CellTable:
    """All cells of the configuration space of n points on a complex, indexed.

    cells_by_dimension[p] lists the p-dimensional cells in increasing cell
    order; the index maps a cell back to its (dimension, position) pair, so
    membership tests and basis lookups are constant time.
    """

    def __init__(self, cx: SimplicialComplex, n: int,
                 cells_by_dimension: list[list[Cell]]):
        self.complex = cx
        self.n = n
        self.cells_by_dimension = cells_by_dimension
        self.index: dict[Cell, tuple[int, int]] = {}
        for p, cells in enumerate(cells_by_dimension):
            for pos, cell in enumerate(cells):
                self.index[cell] = (p, pos)

    @property
    def top_dimension(self) -> int:
        return len(self.cells_by_dimension) - 1

    def cells(self, p: int) -> list[Cell]:
        if 0 <= p < len(self.cells_by_dimension):
            return self.cells_by_dimension[p]
        return []

    def position(self, cell: Cell) -> tuple[int, int]:
        return self.index[cell]

    def all_cells(self) -> Iterator[Cell]:
        for cells in self.cells_by_dimension:
            yield from cells

    def __contains__(self, cell) -> bool:
        return cell in self.index

    def __len__(self) -> int:
        return len(self.index)

    def __repr__(self):
        sizes = [len(c) for c in self.cells_by_dimension]
        return f"CellTable(n={self.n}, cells per dimension {sizes})"


def enumerate_cells(cx: SimplicialComplex, n: int) -> CellTable:
    """Enumerate the n-tuples of pairwise disjoint faces of cx, by dimension.

    Tuples are produced by backtracking with a used-vertex mask, so only
    feasible prefixes are ever extended. Iterating faces in face order makes
    the generation order lexicographic, hence each dimension list comes out
    in increasing cell order. The table may be empty when cx has fewer than
    n vertices.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    faces = cx.faces_sorted()
    face_sets = [frozenset(f) for f in faces]
    by_dim: dict[int, list[Cell]] = {}
    chosen: list[Simplex] = []

    def extend(used: frozenset[int]) -> None:
        if len(chosen) == n:
            cell = tuple(chosen)
            by_dim.setdefault(cell_dimension(cell), []).append(cell)
            return
        for f, fset in zip(faces, face_sets):
            if used.isdisjoint(fset):
                chosen.append(f)
                extend(used | fset)
                chosen.pop()

    extend(frozenset())
    if not by_dim:
        return CellTable(cx, n, [])
    top = max(by_dim)
    table = [sorted(by_dim.get(p, []), key=cell_key) for p in range(top + 1)]
    return CellTable(cx, n, table)


def _checked_coordinate(cell: Cell, i: int, j: int) -> Simplex:
    if not 1 <= i <= len(cell):
        raise ValueError(f"coordinate index {i} out of range 1..{len(cell)}")
    coord = cell[i - 1]
    if len(coord) == 1:
        raise ValueError(f"coordinate {i} would become empty")
    if not 0 <= j < len(coord):
        raise ValueError(f"vertex position {j} out of range 0..{len(coord) - 1}")
    return coord


def face(cell: Cell, i: int, j: int) -> Cell:
    """Codimension-1 face: drop the vertex at position j of coordinate i."""
    coord = _checked_coordinate(cell, i, j)
    return cell[:i - 1] + (coord[:j] + coord[j + 1:],) + cell[i:]


def incidence(cell: Cell, i: int, j: int) -> int:
    """Sign of face(cell, i, j) in the cellular boundary of cell.

    The sign alternates with the number of vertex slots preceding position j
    of coordinate i, counting each earlier coordinate by its dimension.
    """
    _checked_coordinate(cell, i, j)
    eps = sum(len(c) - 1 for c in cell[:i - 1]) + j
    return -1 if eps % 2 else 1


def facets(cell: Cell) -> list[tuple[Cell, int]]:
    """All codimension-1 faces with their incidence signs, in (i, j) order."""
    out: list[tuple[Cell, int]] = []
    offset = 0
    for idx, coord in enumerate(cell):
        p = len(coord) - 1
        if p >= 1:
            left, right = cell[:idx], cell[idx + 1:]
            for j in range(p + 1):
                sign = -1 if (offset + j) % 2 else 1
                out.append((left + (coord[:j] + coord[j + 1:],) + right, sign))
        offset += p
    return out


def insert_vertex(cell: Cell, i: int, v: int, cx: SimplicialComplex) -> Cell | None:
    """cell with v added to coordinate i, or None when that is not a cell.

    The insertion fails (returns None) when v already occurs in some
    coordinate, or when the enlarged coordinate is not a face of cx.
    """
    if not 1 <= i <= len(cell):
        raise ValueError(f"coordinate index {i} out of range 1..{len(cell)}")
    for coord in cell:
        if v in coord:
            return None
    coord = cell[i - 1]
    pos = bisect_left(coord, v)
    enlarged = coord[:pos] + (v,) + coord[pos:]
    if enlarged not in cx.faces:
        return None
    return cell[:i - 1] + (enlarged,) + cell[i:]


def delete_vertex(cell: Cell, i: int, v: int) -> Cell:
    """Codimension-1 face dropping vertex v (by label) from coordinate i."""
    if not 1 <= i <= len(cell):
        raise ValueError(f"coordinate index {i} out of range 1..{len(cell)}")
    coord = cell[i - 1]
    pos = bisect_left(coord, v)
    if pos == len(coord) or coord[pos] != v:
        raise ValueError(f"vertex {v} not in coordinate {i} of {cell}")
    return face(cell, i, pos)


def cell_to_string(cell: Cell) -> str:
    """Serialize as comma-separated labels per coordinate, joined by '|'."""
    return "|".join(",".join(str(v) for v in coord) for coord in cell)


def parse_cell(text: str, vertex_count: int | None = None) -> Cell:
    """Parse the '|'-separated cell syntax, e.g. "1,2|3" for ((1, 2), (3,)).

    Labels within a coordinate are separated by commas. A comma-free token of
    several digits is read digit by digit (compact form, "12|3"), which is
    only unambiguous while all labels are single-digit; when vertex_count
    exceeds 9 such a token is taken as one multi-digit label instead.
    """
    coords: list[Simplex] = []
    compact_ok = vertex_count is None or vertex_count <= 9
    for token in text.split("|"):
        token = token.strip()
        if not token:
            raise ValueError(f"empty coordinate in cell string {text!r}")
        if "," in token:
            parts = [p.strip() for p in token.split(",")]
        elif len(token) > 1 and compact_ok and token.isdigit():
            parts = list(token)
        else:
            parts = [token]
        try:
            labels = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"bad vertex label in coordinate {token!r}") from None
        if any(v < 1 for v in labels):
            raise ValueError(f"vertex labels must be positive in {token!r}")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError(f"repeated or unsorted vertex in coordinate {token!r}")
        if vertex_count is not None and labels[-1] > vertex_count:
            raise ValueError(f"label {labels[-1]} exceeds vertex count {vertex_count}")
        coords.append(labels)
    cell = tuple(coords)
    seen: set[int] = set()
    for coord in cell:
        for v in coord:
            if v in seen:
                raise ValueError(f"vertex {v} repeated across coordinates in {text!r}")
            seen.add(v)
    return cell


def estimate_cell_count(vertex_count: int, max_face_size: int, n: int) -> int:
    """Upper bound on the cell count, from vertex bookkeeping alone.

    Counts ordered n-tuples of disjoint nonempty vertex subsets with sizes
    capped by max_face_size, ignoring which subsets are actually faces. Used
    as a cheap feasibility estimate before enumerating anything.
    """
    cap = max(0, min(max_face_size, vertex_count))
    memo: dict[tuple[int, int], int] = {}

    def count(remaining: int, k: int) -> int:
        if k == 0:
            return 1
        key = (remaining, k)
        if key not in memo:
            memo[key] = sum(
                comb(remaining, size) * count(remaining - size, k - 1)
                for size in range(1, min(cap, remaining) + 1))
        return memo[key]

    return count(vertex_count, n)
