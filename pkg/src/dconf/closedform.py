"""Closed-form cell classification and counting for two points on skeleta.

Everything here concerns the space of ordered pairs of disjoint faces of the
skeleton of dimension mu - kappa - 1 of a simplex on mu vertices, with
2 <= kappa <= mu - 2. Cells are written (A, B) for the two coordinate vertex
sets, each of size at most mu - kappa. The predicates below give, for every
cell, its status under the matching algorithm together with the matched
partner, without running the algorithm; the test suite checks the two
against each other cell by cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

Cell2 = tuple[tuple[int, ...], tuple[int, ...]]

TYPE_TAGS = ("ii", "iii", "iv", "v", "vi", "vii", "viii")


def binom(a: int, b: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= b <= a."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def interval(p: int, q: int) -> set[int]:
    """The set of integers {p, ..., q}, empty when p > q."""
    return set(range(p, q + 1))


@dataclass(frozen=True)
class SkeletonParams:
    """Vertex count mu and codimension parameter kappa, with 2 <= kappa <= mu-2.

    Equivalently the skeleton of dimension d = mu - kappa - 1 of the simplex
    of dimension m = mu - 1; coordinates of a cell hold at most
    mu - kappa vertices each.
    """

    mu: int
    kappa: int

    def __post_init__(self):
        if self.kappa < 2 or self.kappa > self.mu - 2:
            raise ValueError(
                f"need 2 <= kappa <= mu - 2, got mu={self.mu}, kappa={self.kappa}")

    @classmethod
    def from_skeleton(cls, m: int, d: int) -> "SkeletonParams":
        return cls(m + 1, m - d)

    @property
    def m(self) -> int:
        return self.mu - 1

    @property
    def d(self) -> int:
        return self.mu - self.kappa - 1

    @property
    def max_size(self) -> int:
        return self.mu - self.kappa

    @property
    def connectivity_degree(self) -> int:
        """min(d, m - 1): homology vanishes strictly between 0 and this."""
        return min(self.d, self.m - 1)


def _as_cell(A: Iterable[int], B: Iterable[int], params: SkeletonParams) -> Cell2:
    a = tuple(sorted(int(v) for v in A))
    b = tuple(sorted(int(v) for v in B))
    for name, part in (("A", a), ("B", b)):
        if not part:
            raise ValueError(f"coordinate {name} is empty")
        if part[0] < 1 or part[-1] > params.mu:
            raise ValueError(f"coordinate {name} has labels outside 1..{params.mu}")
        if len(set(part)) != len(part):
            raise ValueError(f"coordinate {name} repeats a vertex")
        if len(part) > params.max_size:
            raise ValueError(f"coordinate {name} exceeds size {params.max_size}")
    if set(a) & set(b):
        raise ValueError("coordinates are not disjoint")
    return (a, b)


def classify_cell(A: Iterable[int], B: Iterable[int], params: SkeletonParams):
    """Full case split for one cell: status plus type tag or match data.

    Returns ("critical", tag), ("collapsible", facet, coordinate, vertex) or
    ("redundant", coface, coordinate, vertex). Exactly one case applies to
    every valid cell. The governing condition is whether every label above
    max(B) already sits in A: if so the action happens on the second
    coordinate or, for singleton B, next to its element; if not, B must be
    completable, or the action moves to the first coordinate around the top
    label and the pivot, the largest label below max(B) missing from B.
    """
    a, b = _as_cell(A, B, params)
    mu, size = params.mu, params.max_size
    aset, bset = set(a), set(b)
    r, s = len(a), len(b)
    ar, bs = a[-1], b[-1]

    def pair(x: set[int], y: set[int]) -> Cell2:
        return (tuple(sorted(x)), tuple(sorted(y)))

    if interval(bs + 1, mu) <= aset:
        if s > 1:
            return ("collapsible", pair(aset, bset - {bs}), 2, bs)
        b1 = b[0]
        assert b1 >= 2, "a singleton B = {1} cannot have all higher labels in A"
        if b1 - 1 in aset:
            if r == 1:
                return ("critical", "ii")
            return ("collapsible", pair(aset - {b1 - 1}, bset), 1, b1 - 1)
        if r == size:
            return ("critical", "iii")
        return ("redundant", pair(aset | {b1 - 1}, bset), 1, b1 - 1)
    # some label above max(B) is missing from A; in particular max(B) < mu
    if s < size:
        v = max(interval(bs + 1, mu) - aset)
        return ("redundant", pair(aset, bset | {v}), 2, v)
    if ar == mu:
        if r == 1:
            return ("critical", "iv")
        return ("collapsible", pair(aset - {mu}, bset), 1, mu)
    if not interval(bs + 1, mu - 1) <= aset:
        if r == size:
            return ("critical", "v")
        return ("redundant", pair(aset | {mu}, bset), 1, mu)
    if interval(1, bs - 1) <= bset:
        return ("critical", "vi")
    abar = max(interval(1, bs - 1) - bset)
    if abar in aset:
        if r == 1:
            return ("critical", "vii")
        return ("collapsible", pair(aset - {abar}, bset), 1, abar)
    if r == size:
        return ("critical", "viii")
    return ("redundant", pair(aset | {abar}, bset), 1, abar)


def critical_type(A: Iterable[int], B: Iterable[int], params: SkeletonParams) -> str | None:
    """Type tag of a critical cell, or None when the cell is matched."""
    outcome = classify_cell(A, B, params)
    return outcome[1] if outcome[0] == "critical" else None


def collapsible_match(A: Iterable[int], B: Iterable[int],
                      params: SkeletonParams) -> tuple[Cell2, int, int] | None:
    """(matched facet, coordinate, vertex) for a collapsible cell, else None."""
    outcome = classify_cell(A, B, params)
    return outcome[1:] if outcome[0] == "collapsible" else None


def redundant_match(A: Iterable[int], B: Iterable[int],
                    params: SkeletonParams) -> tuple[Cell2, int, int] | None:
    """(matched coface, coordinate, vertex) for a redundant cell, else None."""
    outcome = classify_cell(A, B, params)
    return outcome[1:] if outcome[0] == "redundant" else None


def two_d_critical_count(params: SkeletonParams) -> int:
    """Critical cells in dimension 2(mu - kappa - 1), for mu < 2*kappa - 1.

    Both coordinates then have maximal size and avoid the top label. From all
    such pairs, subtract those whose largest B label b and pivot a (the
    largest label below b outside B, which must lie in A) force a
    first-coordinate match: the inner binomials choose the remaining A labels
    below a and the B labels below the run a+1..b.
    """
    mu, k = params.mu, params.kappa
    size = params.max_size
    total = binom(mu - 1, size) * binom(k - 1, size)
    excluded = 0
    for bv in range(k, mu):
        for av in range(bv - size, bv):
            excluded += binom(av - 1, bv - k) * binom(av - bv + k - 1, size - bv + av)
    return total - excluded


def predicted_type_counts(params: SkeletonParams) -> dict[str, int]:
    """Closed-form count per critical type; "v" and "viii" only as a sum.

    The three middle types live in dimension mu - kappa - 1 and always
    exist; the single top-dimensional cell of type "vi" exists exactly when
    mu >= 2*kappa - 1, and the paired-maximal types "v" and "viii" exactly
    when mu < 2*kappa - 1.
    """
    mu, k = params.mu, params.kappa
    size = params.max_size
    return {
        "ii": 1,
        "iii": binom(mu - 1, size),
        "iv": binom(mu - 2, size),
        "vii": binom(mu - 2, size - 1),
        "vi": 1 if mu >= 2 * k - 1 else 0,
        "v+viii": two_d_critical_count(params) if mu < 2 * k - 1 else 0,
    }


def predicted_critical_counts(params: SkeletonParams) -> dict[int, int]:
    """Critical cells per dimension, with coinciding dimensions added up.

    One cell in dimension 0 and twice binom(mu - 1, mu - kappa) in dimension
    mu - kappa - 1, plus either the single cell in dimension mu - 3 (when
    mu >= 2*kappa - 1) or the paired-maximal batch in dimension
    2(mu - kappa - 1) (when mu < 2*kappa - 1).
    """
    counts: dict[int, int] = {0: 1}

    def add(dim: int, value: int) -> None:
        if value:
            counts[dim] = counts.get(dim, 0) + value

    add(params.d, 2 * binom(params.mu - 1, params.max_size))
    if params.mu >= 2 * params.kappa - 1:
        add(params.mu - 3, 1)
    else:
        add(2 * params.d, two_d_critical_count(params))
    return counts


def predicted_betti(m: int, d: int) -> dict[int, int]:
    """Betti numbers for two points on the d-skeleton of the m-simplex.

    Keyed by degree; degrees with Betti number zero are omitted. For
    d >= m - 1 the space has the homology of a sphere of dimension m - 1.
    Below that the profile equals the critical-cell counts: the matching is
    perfect in the sense that its chain complex carries zero boundary maps,
    and the homology is torsion free.
    """
    if d < 1 or d > m:
        raise ValueError(f"need 1 <= d <= m, got d={d} with m={m}")
    if d >= m - 1:
        counts = {0: 1}
        counts[m - 1] = counts.get(m - 1, 0) + 1
        return counts
    return predicted_critical_counts(SkeletonParams.from_skeleton(m, d))


SWEEP_COLUMNS = ("m", "d", "dim", "predicted_count", "algorithmic_count",
                 "betti_cellular", "betti_morse")


def format_sweep_csv(rows: Iterable[dict]) -> str:
    """Render sweep rows, one per (m, d, dimension), as a CSV table."""
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(str(row[c]) for c in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"
