"""Integer chain complexes, Smith reduction, Betti numbers and torsion.

Boundary matrices are kept sparse as {(row, col): value} dictionaries with
arbitrary-precision integer entries; shapes come from the per-degree ranks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cells import CellTable, facets

SparseMatrix = dict[tuple[int, int], int]


def _columns(entries: Mapping[tuple[int, int], int]) -> dict[int, list[tuple[int, int]]]:
    cols: dict[int, list[tuple[int, int]]] = {}
    for (i, j), v in entries.items():
        cols.setdefault(j, []).append((i, v))
    return cols


@dataclass(frozen=True)
class ChainComplex:
    """Free integer chain complex: per-degree ranks and boundary matrices.

    boundaries[p] maps degree p to degree p-1 and has shape
    ranks[p-1] x ranks[p]; the degree-0 entry is always empty.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[SparseMatrix, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        bounds = tuple(dict(b) for b in self.boundaries)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "boundaries", bounds)
        if len(bounds) != len(ranks):
            raise ValueError("need exactly one boundary map per degree")
        for p, entries in enumerate(bounds):
            if p == 0:
                if entries:
                    raise ValueError("degree 0 has no boundary")
                continue
            for (i, j), v in entries.items():
                if not (0 <= i < ranks[p - 1] and 0 <= j < ranks[p]):
                    raise ValueError(f"entry {(i, j)} outside the shape of boundary {p}")
                if not v:
                    raise ValueError("sparse boundaries must not store zeros")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary_shape(self, p: int) -> tuple[int, int]:
        return (self.ranks[p - 1] if p >= 1 else 0, self.ranks[p])

    def composes_to_zero(self) -> bool:
        """Check that consecutive boundary maps multiply to the zero matrix."""
        for p in range(1, len(self.ranks) - 1):
            lower_cols = _columns(self.boundaries[p])
            upper_cols = _columns(self.boundaries[p + 1])
            for col in upper_cols.values():
                acc: dict[int, int] = {}
                for i, v in col:
                    for i2, w in lower_cols.get(i, ()):
                        acc[i2] = acc.get(i2, 0) + v * w
                if any(acc.values()):
                    return False
        return True


@dataclass(frozen=True)
class DegreeHomology:
    dim: int
    betti: int
    torsion: tuple[int, ...]


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers and torsion invariant factors, one record per degree."""

    degrees: tuple[DegreeHomology, ...]

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(d.betti for d in self.degrees)

    def betti(self, p: int) -> int:
        if 0 <= p < len(self.degrees):
            return self.degrees[p].betti
        return 0

    def torsion(self, p: int) -> tuple[int, ...]:
        if 0 <= p < len(self.degrees):
            return self.degrees[p].torsion
        return ()

    def has_torsion(self) -> bool:
        return any(d.torsion for d in self.degrees)

    def agrees_with(self, other: "HomologyResult") -> bool:
        """Equality degree by degree, padding missing top degrees with zero."""
        top = max(len(self.degrees), len(other.degrees))
        return all(
            self.betti(p) == other.betti(p) and self.torsion(p) == other.torsion(p)
            for p in range(top))

    def to_json_dict(self) -> dict:
        return {
            "degrees": [
                {"dim": d.dim, "betti": d.betti, "torsion": list(d.torsion)}
                for d in self.degrees
            ]
        }


def cellular_complex(table: CellTable) -> ChainComplex:
    """Boundary matrices of the cell table in its own basis order."""
    ranks = tuple(len(table.cells(p)) for p in range(table.top_dimension + 1))
    boundaries: list[SparseMatrix] = [dict() for _ in ranks]
    for p in range(1, len(ranks)):
        entries = boundaries[p]
        for col, cell in enumerate(table.cells(p)):
            for f, sign in facets(cell):
                row = table.position(f)[1]
                entries[(row, col)] = sign
    return ChainComplex(ranks, tuple(boundaries))


def invariant_factors(entries: Mapping[tuple[int, int], int]) -> list[int]:
    """Diagonal invariant factors d1 | d2 | ... | dr of a sparse matrix.

    Classical elimination by unimodular row and column operations. Pivots are
    chosen to keep fill low: first unit entries whose row or column is
    already a singleton (these cause no fill at all), then unit entries with
    the best Markowitz score, and only as a last resort a smallest-magnitude
    entry, which is then reduced by remainder steps. Before a non-unit pivot
    is recorded, the remaining entries are swept for divisibility, so the
    output factors always form a divisibility chain.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    units: set[tuple[int, int]] = set()
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, {})[i] = v
            if v in (1, -1):
                units.add((i, j))

    single_rows: list[int] = [i for i, row in rows.items() if len(row) == 1]
    single_cols: list[int] = [j for j, col in cols.items() if len(col) == 1]

    def set_entry(i: int, j: int, v: int) -> None:
        if v:
            row = rows.setdefault(i, {})
            was = len(row)
            row[j] = v
            col = cols.setdefault(j, {})
            col[i] = v
            if v in (1, -1):
                units.add((i, j))
            else:
                units.discard((i, j))
            if was == 0 and len(row) == 1:
                single_rows.append(i)
            if len(col) == 1:
                single_cols.append(j)
        else:
            row = rows.get(i)
            if row is None or j not in row:
                return
            del row[j]
            if not row:
                del rows[i]
            elif len(row) == 1:
                single_rows.append(i)
            col = cols[j]
            del col[i]
            if not col:
                del cols[j]
            elif len(col) == 1:
                single_cols.append(j)
            units.discard((i, j))

    def axpy_row(dst: int, src: int, c: int) -> None:
        src_items = list(rows[src].items())
        dst_row = rows.get(dst, {})
        for j, v in src_items:
            set_entry(dst, j, dst_row.get(j, 0) + c * v)

    def axpy_col(dst: int, src: int, c: int) -> None:
        src_items = list(cols[src].items())
        dst_col = cols.get(dst, {})
        for i, v in src_items:
            set_entry(i, dst, dst_col.get(i, 0) + c * v)

    def choose_pivot() -> tuple[int, int]:
        while single_rows:
            i = single_rows.pop()
            row = rows.get(i)
            if row is not None and len(row) == 1:
                j = next(iter(row))
                if row[j] in (1, -1):
                    return (i, j)
        while single_cols:
            j = single_cols.pop()
            col = cols.get(j)
            if col is not None and len(col) == 1:
                i = next(iter(col))
                if col[i] in (1, -1):
                    return (i, j)
        if units:
            best = None
            best_cost = None
            for ij in units:
                cost = (len(rows[ij[0]]) - 1) * (len(cols[ij[1]]) - 1)
                if best_cost is None or cost < best_cost or (cost == best_cost and ij < best):
                    best, best_cost = ij, cost
                    if cost == 0:
                        break
            return best
        return min(
            ((i, j) for i, row in rows.items() for j in row),
            key=lambda ij: (abs(rows[ij[0]][ij[1]]),
                            (len(rows[ij[0]]) - 1) * (len(cols[ij[1]]) - 1), ij))

    factors: list[int] = []
    while rows:
        i, j = choose_pivot()
        while True:
            v = rows[i][j]
            for i2 in [x for x in cols[j] if x != i]:
                q = rows[i2][j] // v
                if q:
                    axpy_row(i2, i, -q)
            leftovers = [x for x in cols[j] if x != i]
            if leftovers:
                i = min(leftovers, key=lambda x: (abs(rows[x][j]), x))
                continue
            for j2 in [y for y in rows[i] if y != j]:
                q = rows[i][j2] // v
                if q:
                    axpy_col(j2, j, -q)
            leftovers = [y for y in rows[i] if y != j]
            if leftovers:
                j = min(leftovers, key=lambda y: (abs(rows[i][y]), y))
                continue
            d = abs(rows[i][j])
            if d != 1:
                witness = None
                for i2, row in rows.items():
                    if i2 == i:
                        continue
                    if any(val % d for val in row.values()):
                        witness = i2
                        break
                if witness is not None:
                    axpy_row(i, witness, 1)
                    continue
            factors.append(d)
            set_entry(i, j, 0)
            break
    return factors


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors (d1 | d2 | ... | dr) and rank of a dense matrix."""
    entries: SparseMatrix = {}
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = int(v)
    factors = invariant_factors(entries)
    return factors, len(factors)


def homology(chain: ChainComplex, threads: int = 1) -> HomologyResult:
    """Betti numbers and torsion of a chain complex, degree by degree.

    The degree-p Betti number is ranks[p] minus the ranks of the adjacent
    boundary maps; the degree-p torsion is the list of invariant factors
    exceeding 1 of the boundary map arriving from degree p+1. With
    threads > 1 the per-degree reductions run in a thread pool.
    """
    if not chain.composes_to_zero():
        raise ValueError("not a chain complex")
    top = chain.top_degree
    if top < 0:
        return HomologyResult(())
    degrees_to_reduce = list(range(1, top + 1))
    if threads > 1 and len(degrees_to_reduce) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reduced = list(pool.map(lambda p: invariant_factors(chain.boundaries[p]),
                                    degrees_to_reduce))
    else:
        reduced = [invariant_factors(chain.boundaries[p]) for p in degrees_to_reduce]
    factors_by_degree: dict[int, list[int]] = dict(zip(degrees_to_reduce, reduced))
    out = []
    for p in range(top + 1):
        rank_in = len(factors_by_degree.get(p, ()))
        rank_out = len(factors_by_degree.get(p + 1, ()))
        betti = chain.ranks[p] - rank_in - rank_out
        torsion = tuple(d for d in factors_by_degree.get(p + 1, ()) if d > 1)
        out.append(DegreeHomology(p, betti, torsion))
    return HomologyResult(tuple(out))
