"""Finite abstract simplicial complexes over an ordered vertex set."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

Simplex = tuple[int, ...]


class ComplexFormatError(ValueError):
    """Parse failure in the complex file format, tagged with its line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def simplex_key(simplex: Simplex) -> tuple[int, Simplex]:
    """Sort key: lower dimension first, then lexicographic on vertex lists."""
    return (len(simplex), simplex)


def face_order(a: Iterable[int], b: Iterable[int]) -> int:
    """Three-way comparison (-1/0/+1) of simplices under the face order."""
    ka = simplex_key(tuple(a))
    kb = simplex_key(tuple(b))
    return (ka > kb) - (ka < kb)


def _validated_simplex(vertices: Iterable[int]) -> Simplex:
    t = tuple(int(v) for v in vertices)
    if not t:
        raise ValueError("a simplex needs at least one vertex")
    if t[0] < 1:
        raise ValueError(f"vertex labels start at 1: {t}")
    if any(a >= b for a, b in zip(t, t[1:])):
        raise ValueError(f"vertex list must be strictly increasing: {t}")
    return t


class SimplicialComplex:
    """A downward-closed family of simplices on vertices 1..vertex_count.

    Simplices are strictly increasing tuples of integer labels; the sorted
    listing doubles as the orientation convention. The constructor closes the
    given family under taking nonempty subsets, so any generating set (for
    example just the maximal faces) produces a valid complex.
    """

    __slots__ = ("vertex_count", "faces")

    def __init__(self, faces: Iterable[Iterable[int]], vertex_count: int | None = None):
        generators = [_validated_simplex(f) for f in faces]
        closed: set[Simplex] = set()
        for gen in generators:
            for k in range(1, len(gen) + 1):
                closed.update(combinations(gen, k))
        self.faces: frozenset[Simplex] = frozenset(closed)
        top = max((f[-1] for f in self.faces), default=0)
        if vertex_count is None:
            vertex_count = top
        elif vertex_count < top:
            raise ValueError(
                f"vertex_count {vertex_count} is smaller than the largest label {top}")
        self.vertex_count = vertex_count

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    def has_face(self, vertices: Iterable[int]) -> bool:
        return tuple(vertices) in self.faces

    def faces_sorted(self) -> list[Simplex]:
        return sorted(self.faces, key=simplex_key)

    def maximal_faces(self) -> list[Simplex]:
        """Faces that are not contained in any larger face, in face order."""
        out = []
        for f in self.faces:
            fs = set(f)
            has_coface = any(
                v not in fs and tuple(sorted(fs | {v})) in self.faces
                for v in range(1, self.vertex_count + 1))
            if not has_coface:
                out.append(f)
        return sorted(out, key=simplex_key)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.faces == other.faces

    def __hash__(self):
        return hash((self.vertex_count, self.faces))

    def __repr__(self):
        return (f"SimplicialComplex({len(self.faces)} faces "
                f"on {self.vertex_count} vertices)")


def skeleton_complex(m: int, d: int) -> SimplicialComplex:
    """Skeleton of dimension d of the m-dimensional simplex, vertices 1..m+1."""
    if d < 1 or d > m:
        raise ValueError(f"need 1 <= d <= m, got d={d} with m={m}")
    vertices = range(1, m + 2)
    faces = [c for k in range(1, d + 2) for c in combinations(vertices, k)]
    return SimplicialComplex(faces, vertex_count=m + 1)


def parse_complex(text: str) -> SimplicialComplex:
    """Read a complex from text: one simplex per line, labels split by spaces.

    Blank lines and lines starting with '#' are skipped. The result is the
    downward closure of the listed faces; vertex_count is the largest label
    seen, so listing just the maximal faces is enough.
    """
    generators: list[Simplex] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            labels = [int(part) for part in line.split()]
        except ValueError:
            raise ComplexFormatError(lineno, f"expected integers, got {line!r}") from None
        if any(v < 1 for v in labels):
            raise ComplexFormatError(lineno, "vertex labels must be positive")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ComplexFormatError(lineno, "vertex list must be strictly increasing")
        generators.append(tuple(labels))
    if not generators:
        raise ComplexFormatError(0, "no simplices in input")
    return SimplicialComplex(generators)


def complex_text(cx: SimplicialComplex) -> str:
    """Serialize a complex as its maximal faces, one line per face."""
    lines = [" ".join(str(v) for v in f) for f in cx.maximal_faces()]
    return "\n".join(lines) + "\n"
