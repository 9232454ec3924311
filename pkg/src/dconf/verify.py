"""Verification battery: every headline prediction against the computed data.

Each check rebuilds what it needs through the public modules and reports a
pass/fail flag with a short detail string. The battery backs the command
line "verify" subcommand; the test suite mirrors the same criteria
independently.
"""

from __future__ import annotations

import json
from typing import Callable

from .cells import CellTable, cell_to_string, enumerate_cells
from .closedform import (SkeletonParams, classify_cell, format_sweep_csv,
                         predicted_betti, predicted_critical_counts,
                         predicted_type_counts)
from .complexes import skeleton_complex
from .field import (DiscreteField, build_field, check_acyclic,
                    check_forced_redundancy, check_maximal, classify, field_dot)
from .homology import cellular_complex, homology
from .morse import count_lower_paths, morse_boundary


class _Workspace:
    """Per-run cache of tables, fields and homology results."""

    def __init__(self):
        self._tables: dict[tuple[int, int, int], CellTable] = {}
        self._fields: dict[tuple[int, int, int], DiscreteField] = {}
        self._hcell: dict[tuple[int, int, int], object] = {}
        self._morse: dict[tuple[int, int, int], object] = {}

    def table(self, m: int, d: int, n: int = 2) -> CellTable:
        key = (m, d, n)
        if key not in self._tables:
            self._tables[key] = enumerate_cells(skeleton_complex(m, d), n)
        return self._tables[key]

    def field(self, m: int, d: int, n: int = 2) -> DiscreteField:
        key = (m, d, n)
        if key not in self._fields:
            self._fields[key] = build_field(self.table(m, d, n))
        return self._fields[key]

    def morse(self, m: int, d: int, n: int = 2):
        key = (m, d, n)
        if key not in self._morse:
            self._morse[key] = morse_boundary(self.field(m, d, n))
        return self._morse[key]

    def cellular_homology(self, m: int, d: int, n: int = 2):
        key = (m, d, n)
        if key not in self._hcell:
            self._hcell[key] = homology(cellular_complex(self.table(m, d, n)))
        return self._hcell[key]


def _expected_k3_matches() -> list[tuple[str, str]]:
    return [
        ("1|2", "1|2,3"),
        ("2|1", "2|1,3"),
        ("3|1", "3|1,2"),
        ("1|3", "1,2|3"),
        ("3|2", "1,3|2"),
    ]


def _check_example_field(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    field = ws.field(2, 1)
    got = [(cell_to_string(m.lower), cell_to_string(m.upper)) for m in field.matches]
    if got != _expected_k3_matches():
        return False, f"matches differ: {got}"
    criticals = [cell_to_string(c) for c in field.critical_cells()]
    if criticals != ["2|3", "2,3|1"]:
        return False, f"critical cells differ: {criticals}"
    return True, "five matches in order, critical cells 2|3 and 2,3|1"


def _check_seven_circles(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    table = ws.table(3, 1)
    field = ws.field(3, 1)
    h = homology(cellular_complex(table))
    if h.betti_numbers() != (1, 7, 0) and h.betti_numbers() != (1, 7):
        return False, f"betti {h.betti_numbers()}"
    if h.has_torsion():
        return False, "unexpected torsion"
    params = SkeletonParams(4, 2)
    expected = {cell for cell in table.all_cells()
                if classify_cell(cell[0], cell[1], params)[0] == "critical"}
    got = set(field.critical_cells())
    if expected != got:
        return False, "critical set differs from the closed form"
    return True, f"betti (1, 7); {len(got)} critical cells as predicted"


def _check_genus_six(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    table = ws.table(4, 1)
    field = ws.field(4, 1)
    hcell = homology(cellular_complex(table))
    hmorse = homology(morse_boundary(field).to_chain_complex())
    if not hcell.agrees_with(hmorse):
        return False, "cellular and critical-complex homology disagree"
    if hcell.betti_numbers() != (1, 12, 1):
        return False, f"betti {hcell.betti_numbers()}"
    if hcell.has_torsion():
        return False, "unexpected torsion"
    return True, "betti (1, 12, 1) by both routes, torsion free"


def _sweep_range(max_m: int):
    for m in range(4, max_m + 1):
        for d in range(1, m + 1):
            yield m, d


def _check_betti_sweep(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    checked = 0
    for m, d in _sweep_range(max_m):
        hcell = ws.cellular_homology(m, d)
        hmorse = homology(ws.morse(m, d).to_chain_complex())
        expected = predicted_betti(m, d)
        top = max(len(hcell.degrees), len(hmorse.degrees))
        for p in range(top):
            want = expected.get(p, 0)
            if hcell.betti(p) != want or hmorse.betti(p) != want:
                return False, (f"(m={m}, d={d}) degree {p}: predicted {want}, "
                               f"cellular {hcell.betti(p)}, critical {hmorse.betti(p)}")
            if hcell.torsion(p) or hmorse.torsion(p):
                return False, f"(m={m}, d={d}) degree {p}: unexpected torsion"
        checked += 1
    return True, f"{checked} skeleta verified in both homology routes"


def _check_classification(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    cells_checked = 0
    for mu in range(4, max_m + 2):
        for kappa in range(2, mu - 1):
            params = SkeletonParams(mu, kappa)
            table = ws.table(params.m, params.d)
            field = ws.field(params.m, params.d)
            for cell in table.all_cells():
                outcome = classify_cell(cell[0], cell[1], params)
                status = field.status(cell)
                if outcome[0] != status:
                    return False, (f"X({mu},{kappa}) cell {cell_to_string(cell)}: "
                                   f"predicted {outcome[0]}, got {status}")
                if outcome[0] == "collapsible":
                    facet, coord, vertex = outcome[1:]
                    m = field.match_of(cell)
                    if (m.lower, m.coordinate, m.vertex) != (facet, coord, vertex):
                        return False, (f"X({mu},{kappa}) {cell_to_string(cell)}: "
                                       f"match data differs")
                elif outcome[0] == "redundant":
                    coface, coord, vertex = outcome[1:]
                    m = field.match_of(cell)
                    if (m.upper, m.coordinate, m.vertex) != (coface, coord, vertex):
                        return False, (f"X({mu},{kappa}) {cell_to_string(cell)}: "
                                       f"match data differs")
                cells_checked += 1
    return True, f"{cells_checked} cells classified identically by both routes"


def _check_type_counts(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    for mu in range(4, max_m + 2):
        for kappa in range(2, mu - 1):
            params = SkeletonParams(mu, kappa)
            field = ws.field(params.m, params.d)
            got: dict[str, int] = {}
            for cell in field.critical_cells():
                tag = classify_cell(cell[0], cell[1], params)[1]
                got[tag] = got.get(tag, 0) + 1
            want = predicted_type_counts(params)
            merged = dict(got)
            merged["v+viii"] = merged.pop("v", 0) + merged.pop("viii", 0)
            for tag in ("ii", "iii", "iv", "vii", "vi", "v+viii"):
                if merged.get(tag, 0) != want[tag]:
                    return False, (f"X({mu},{kappa}) type {tag}: "
                                   f"predicted {want[tag]}, got {merged.get(tag, 0)}")
            paired = got.get("v", 0) > 0 and got.get("viii", 0) > 0
            if (mu < 2 * kappa - 1) != paired:
                return False, f"X({mu},{kappa}) paired-maximal existence is wrong"
            if (mu >= 2 * kappa - 1) != (got.get("vi", 0) == 1):
                return False, f"X({mu},{kappa}) top-cell existence is wrong"
    return True, "per-type counts and existence ranges all match"


def _check_field_structure(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    cases = [(m, d, 2) for m in range(1, max_m + 1) for d in range(1, m + 1)]
    cases += [(m, 1, 3) for m in range(1, min(max_m, 4) + 1)]
    if max_m >= 4:
        cases.append((4, 2, 3))
    for m, d, n in cases:
        field = ws.field(m, d, n)
        if not check_acyclic(field):
            return False, f"cycle in the field on (m={m}, d={d}, n={n})"
        if not check_maximal(field):
            return False, f"maximality fails on (m={m}, d={d}, n={n})"
        if not check_forced_redundancy(field):
            return False, f"forced redundancy fails on (m={m}, d={d}, n={n})"
    return True, f"{len(cases)} fields pass all three structural checks"


def lower_path_targets(mu: int) -> tuple[list, list]:
    """Targets of the vanishing and single-path predictions, for kappa = 3.

    Returns (zero_targets, one_targets) as cells: the zero family collects
    the three shapes of top-run cells reachable only around forbidden
    corners, the one family the cells one slot below the top pair.
    """
    zero: list = []
    one: list = []
    for j in range(3, mu - 2):
        for i in range(1, mu - j + 1):
            a = tuple(range(mu - j + 1, mu + 1))
            b = tuple(v for v in range(1, mu - j + 1) if v != i)
            zero.append((a, b))
    for j in range(2, mu - 3):
        for ell in range(2, mu - j + 1):
            for i in range(1, ell):
                run = tuple(range(mu - j + 1, mu + 1))
                rest = tuple(v for v in range(1, mu - j + 1) if v not in (i, ell))
                zero.append(((ell,) + run, rest))
                zero.append(((i,) + run, rest))
    for ell in range(1, mu - 1):
        b = tuple(v for v in range(1, mu - 1) if v != ell)
        one.append(((mu - 1, mu), b))
    return zero, one


def _check_lower_paths(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    counted = 0
    for m in (5, 6):
        if m > max_m:
            continue
        mu = m + 1
        table = ws.table(m, m - 3)
        field = ws.field(m, m - 3)
        start = (tuple(range(mu - 2, mu)), tuple(range(1, mu - 2)))
        zero_targets, one_targets = lower_path_targets(mu)
        for target in zero_targets:
            if count_lower_paths(start, target, field) != 0:
                return False, f"mu={mu}: expected no lower paths to {cell_to_string(target)}"
            counted += 1
        for target in one_targets:
            if count_lower_paths(start, target, field) != 1:
                return False, f"mu={mu}: expected one lower path to {cell_to_string(target)}"
            counted += 1
        morse = ws.morse(m, m - 3)
        top_deg = mu - 3
        col = morse.bases[top_deg].index(start)
        column = [v for (i, j), v in morse.boundaries[top_deg].items() if j == col]
        if any(column):
            return False, f"mu={mu}: top critical cell has a nonzero boundary column"
    return True, f"{counted} lower-path counts match; top boundary columns vanish"


def _check_chain_laws(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    for m, d in _sweep_range(max_m):
        table = ws.table(m, d)
        field = ws.field(m, d)
        chain = cellular_complex(table)
        if not chain.composes_to_zero():
            return False, f"(m={m}, d={d}): cellular boundary squared is nonzero"
        morse = ws.morse(m, d)
        if not morse.to_chain_complex().composes_to_zero():
            return False, f"(m={m}, d={d}): critical-complex boundary squared is nonzero"
        euler_cells = sum((-1) ** p * len(table.cells(p))
                          for p in range(table.top_dimension + 1))
        euler_crit = sum((-1) ** p * len(morse.bases[p]) for p in range(len(morse.bases)))
        h = ws.cellular_homology(m, d)
        euler_betti = sum((-1) ** p * h.betti(p) for p in range(len(h.degrees)))
        if not euler_cells == euler_crit == euler_betti:
            return False, (f"(m={m}, d={d}): Euler characteristics differ "
                           f"({euler_cells}, {euler_crit}, {euler_betti})")
    return True, "boundary laws and Euler characteristics agree everywhere"


def sweep_rows(max_m: int, ws: _Workspace | None = None) -> list[dict]:
    """CSV rows comparing predictions and computations per (m, d, dimension)."""
    ws = ws or _Workspace()
    rows = []
    for m in range(4, max_m + 1):
        for d in range(1, m - 1):
            params = SkeletonParams.from_skeleton(m, d)
            table = ws.table(m, d)
            field = ws.field(m, d)
            predicted = predicted_critical_counts(params)
            algorithmic: dict[int, int] = {}
            for cell in field.critical_cells():
                p = table.position(cell)[0]
                algorithmic[p] = algorithmic.get(p, 0) + 1
            hcell = ws.cellular_homology(m, d)
            hmorse = homology(ws.morse(m, d).to_chain_complex())
            dims = sorted(set(predicted) | set(algorithmic)
                          | {p for p in range(max(len(hcell.degrees), len(hmorse.degrees)))
                             if hcell.betti(p) or hmorse.betti(p)})
            for p in dims:
                rows.append({
                    "m": m, "d": d, "dim": p,
                    "predicted_count": predicted.get(p, 0),
                    "algorithmic_count": algorithmic.get(p, 0),
                    "betti_cellular": hcell.betti(p),
                    "betti_morse": hmorse.betti(p),
                })
    return rows


def _pipeline_bytes(m: int, d: int) -> str:
    """One fresh end-to-end run serialized to a canonical string."""
    table = enumerate_cells(skeleton_complex(m, d), 2)
    field = build_field(table)
    hcell = homology(cellular_complex(table))
    hmorse = homology(morse_boundary(field).to_chain_complex())
    blob = {
        "homology": hcell.to_json_dict(),
        "critical": hmorse.to_json_dict(),
        "report": classify(field).to_json_dict(),
    }
    return json.dumps(blob, sort_keys=True) + field_dot(field)


def _check_determinism(ws: _Workspace, max_m: int) -> tuple[bool, str]:
    for m, d in ((2, 1), (3, 1), (4, 2)):
        if _pipeline_bytes(m, d) != _pipeline_bytes(m, d):
            return False, f"(m={m}, d={d}): repeated runs differ"
    csv_a = format_sweep_csv(sweep_rows(4, _Workspace()))
    csv_b = format_sweep_csv(sweep_rows(4, _Workspace()))
    if csv_a != csv_b:
        return False, "sweep CSV differs between runs"
    return True, "repeated pipelines are byte-identical"


CHECKS: list[tuple[str, str, Callable, tuple[str, ...]]] = [
    ("example-field", "triangle matching: five matches in order, two critical cells",
     _check_example_field, ("quick", "paper")),
    ("seven-circles", "two points on the complete graph on 4 vertices: betti (1, 7), "
     "critical set equals the closed form", _check_seven_circles, ("quick", "paper")),
    ("genus-six", "two points on the complete graph on 5 vertices: betti (1, 12, 1) "
     "by both homology routes", _check_genus_six, ("quick", "paper")),
    ("betti-sweep", "closed-form betti = cellular = critical-complex homology, "
     "torsion free", _check_betti_sweep, ("paper",)),
    ("classification", "cell-by-cell status and match data agree with the closed "
     "form", _check_classification, ("quick", "paper")),
    ("type-counts", "per-type critical counts and existence ranges",
     _check_type_counts, ("paper",)),
    ("field-structure", "acyclicity, maximality and forced redundancy on every "
     "corpus field", _check_field_structure, ("paper",)),
    ("lower-paths", "lower-path counts from the top critical cell and its zero "
     "boundary column", _check_lower_paths, ("paper",)),
    ("chain-laws", "boundary squared vanishes; Euler characteristics agree",
     _check_chain_laws, ("quick", "paper")),
    ("determinism", "repeated pipelines produce byte-identical output",
     _check_determinism, ("quick", "paper")),
]

_QUICK_MAX_M = 4


def run_suite(suite: str = "quick", max_m: int = 6) -> dict:
    """Run the selected checks and return a JSON-ready report."""
    if suite not in ("quick", "paper"):
        raise ValueError(f"unknown suite {suite!r}")
    bound = _QUICK_MAX_M if suite == "quick" else max_m
    ws = _Workspace()
    results = []
    all_passed = True
    for name, description, fn, suites in CHECKS:
        if suite not in suites:
            continue
        passed, details = fn(ws, bound)
        all_passed = all_passed and passed
        results.append({
            "name": name,
            "description": description,
            "passed": passed,
            "details": details,
        })
    return {"suite": suite, "max_m": bound, "passed": all_passed, "checks": results}
