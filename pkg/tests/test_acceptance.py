"""Acceptance battery: one test per criterion, printing a pass line each.

Exact integer arithmetic throughout, so every comparison is exact equality;
the stated runtime bounds are asserted where the criterion gives one.
"""

import os
import subprocess
import sys
import time

import pytest

from conftest import (cellular_homology, morse_homology, skeleton_field,
                      skeleton_morse, skeleton_table)
from dconf import (SkeletonParams, build_field, cellular_complex,
                   check_acyclic, check_forced_redundancy, check_maximal,
                   classify_cell, count_lower_paths, enumerate_cells,
                   homology, morse_boundary, predicted_betti,
                   predicted_type_counts, skeleton_complex,
                   two_d_critical_count)
from dconf.closedform import binom


def c(*coords):
    return tuple(tuple(x) for x in coords)


def report(number, label, started):
    print(f"criterion {number} ({label}): PASS in {time.perf_counter() - started:.2f}s")


def test_criterion_01_example_field_reproduction():
    started = time.perf_counter()
    table = enumerate_cells(skeleton_complex(2, 1), 2)
    field = build_field(table)
    assert [tuple(m) for m in field.matches] == [
        (c((1,), (2,)), c((1,), (2, 3)), 2, 3),
        (c((2,), (1,)), c((2,), (1, 3)), 2, 3),
        (c((3,), (1,)), c((3,), (1, 2)), 2, 2),
        (c((1,), (3,)), c((1, 2), (3,)), 1, 2),
        (c((3,), (2,)), c((1, 3), (2,)), 1, 1),
    ]
    assert field.critical_cells() == [c((2,), (3,)), c((2, 3), (1,))]
    assert time.perf_counter() - started < 1.0
    report(1, "example field reproduction", started)


def test_criterion_02_genus_six_surface():
    started = time.perf_counter()
    table = enumerate_cells(skeleton_complex(4, 1), 2)
    field = build_field(table)
    hcell = homology(cellular_complex(table))
    hmorse = homology(morse_boundary(field).to_chain_complex())
    assert hcell.betti_numbers() == (1, 12, 1)
    assert hmorse.betti_numbers() == (1, 12, 1)
    assert not hcell.has_torsion() and not hmorse.has_torsion()
    assert time.perf_counter() - started < 5.0
    report(2, "genus-six surface", started)


def test_criterion_03_seven_circles():
    started = time.perf_counter()
    table = enumerate_cells(skeleton_complex(3, 1), 2)
    field = build_field(table)
    h = homology(cellular_complex(table))
    assert h.betti_numbers() == (1, 7, 0)
    params = SkeletonParams(4, 2)
    predicted = {cell for cell in table.all_cells()
                 if classify_cell(cell[0], cell[1], params)[0] == "critical"}
    assert len(predicted) == 8
    assert set(field.critical_cells()) == predicted
    assert time.perf_counter() - started < 1.0
    report(3, "seven circles", started)


def test_criterion_04_betti_sweep():
    started = time.perf_counter()
    for m in range(4, 8):
        for d in range(1, m + 1):
            expected = predicted_betti(m, d)
            hcell = cellular_homology(m, d)
            hmorse = morse_homology(m, d)
            top = max(len(hcell.degrees), len(hmorse.degrees), *expected) + 1
            for p in range(top):
                want = expected.get(p, 0)
                assert hcell.betti(p) == want, (m, d, p)
                assert hmorse.betti(p) == want, (m, d, p)
                assert hcell.torsion(p) == () and hmorse.torsion(p) == (), (m, d, p)
            if d <= m - 2:
                # spot the headline counts inside the prediction itself
                if d == m - 2:
                    assert expected[d] == 2 * m + 1
                else:
                    assert expected[d] == 2 * binom(m, d + 1)
                if 2 * d < m - 2:
                    assert expected[2 * d] == two_d_critical_count(
                        SkeletonParams.from_skeleton(m, d))
    report(4, "betti sweep m <= 7", started)


def test_criterion_05_classification_exactness():
    started = time.perf_counter()
    mismatches = 0
    cells_seen = 0
    for mu in range(4, 10):
        for kappa in range(2, mu - 1):
            params = SkeletonParams(mu, kappa)
            table = skeleton_table(params.m, params.d)
            field = skeleton_field(params.m, params.d)
            for cell in table.all_cells():
                cells_seen += 1
                outcome = classify_cell(cell[0], cell[1], params)
                if outcome[0] != field.status(cell):
                    mismatches += 1
                    continue
                m = field.match_of(cell)
                if outcome[0] == "collapsible":
                    if (m.lower, m.coordinate, m.vertex) != outcome[1:]:
                        mismatches += 1
                elif outcome[0] == "redundant":
                    if (m.upper, m.coordinate, m.vertex) != outcome[1:]:
                        mismatches += 1
    assert mismatches == 0
    assert cells_seen > 100000
    report(5, f"classification exactness over {cells_seen} cells", started)


def test_criterion_06_count_identities():
    started = time.perf_counter()
    for mu in range(4, 10):
        for kappa in range(2, mu - 1):
            params = SkeletonParams(mu, kappa)
            field = skeleton_field(params.m, params.d)
            got = {}
            for cell in field.critical_cells():
                tag = classify_cell(cell[0], cell[1], params)[1]
                got[tag] = got.get(tag, 0) + 1
            assert got.get("iii", 0) == binom(mu - 1, mu - kappa), (mu, kappa)
            assert got.get("iv", 0) == binom(mu - 2, mu - kappa), (mu, kappa)
            assert got.get("vii", 0) == binom(mu - 2, mu - kappa - 1), (mu, kappa)
            paired = mu < 2 * kappa - 1
            assert (got.get("v", 0) > 0) == paired, (mu, kappa)
            assert (got.get("viii", 0) > 0) == paired, (mu, kappa)
            assert (got.get("vi", 0) == 1) == (mu >= 2 * kappa - 1), (mu, kappa)
            want = predicted_type_counts(params)
            assert got.get("v", 0) + got.get("viii", 0) == want["v+viii"]
    report(6, "count identities", started)


def test_criterion_07_field_structure():
    started = time.perf_counter()
    cases = [(m, d, 2) for m in range(1, 9) for d in range(1, m + 1)]
    cases += [(m, 1, 3) for m in range(1, 5)]
    cases.append((4, 2, 3))
    for m, d, n in cases:
        field = skeleton_field(m, d, n)
        assert check_acyclic(field), (m, d, n)
        assert check_maximal(field), (m, d, n)
        assert check_forced_redundancy(field), (m, d, n)
    report(7, f"field structure on {len(cases)} fields", started)


def _lower_path_targets(mu):
    zero, one = [], []
    for j in range(3, mu - 2):
        run = tuple(range(mu - j + 1, mu + 1))
        for i in range(1, mu - j + 1):
            zero.append((run, tuple(v for v in range(1, mu - j + 1) if v != i)))
    for j in range(2, mu - 3):
        run = tuple(range(mu - j + 1, mu + 1))
        for ell in range(2, mu - j + 1):
            for i in range(1, ell):
                rest = tuple(v for v in range(1, mu - j + 1) if v not in (i, ell))
                zero.append(((ell,) + run, rest))
                zero.append(((i,) + run, rest))
    for ell in range(1, mu - 1):
        one.append(((mu - 1, mu), tuple(v for v in range(1, mu - 1) if v != ell)))
    return zero, one


@pytest.mark.parametrize("m", [5, 6])
def test_criterion_08_lower_path_counts(m):
    started = time.perf_counter()
    mu = m + 1
    table = skeleton_table(m, m - 3)
    field = skeleton_field(m, m - 3)
    start = (tuple(range(mu - 2, mu)), tuple(range(1, mu - 2)))
    assert start in table
    zero_targets, one_targets = _lower_path_targets(mu)
    assert zero_targets and len(one_targets) == mu - 2
    for target in zero_targets:
        assert count_lower_paths(start, target, field) == 0, target
    for target in one_targets:
        assert count_lower_paths(start, target, field) == 1, target
    morse = skeleton_morse(m, m - 3)
    top_deg = mu - 3
    assert morse.bases[top_deg] == (start,)
    col = [v for (i, j), v in morse.boundaries[top_deg].items()]
    assert not any(col)
    assert time.perf_counter() - started < 120.0
    report(8, f"lower-path counts at m={m}", started)


def test_criterion_09_chain_complex_laws():
    started = time.perf_counter()
    cases = [(m, d, 2) for m in range(2, 9) for d in range(1, m + 1)]
    cases += [(3, 1, 3), (4, 1, 3), (4, 2, 3)]
    for m, d, n in cases:
        table = skeleton_table(m, d, n)
        chain = cellular_complex(table)
        assert chain.composes_to_zero(), (m, d, n)
        morse = skeleton_morse(m, d, n)
        assert morse.to_chain_complex().composes_to_zero(), (m, d, n)
        euler_cells = sum((-1) ** p * len(table.cells(p))
                          for p in range(table.top_dimension + 1))
        euler_crit = sum((-1) ** p * len(b) for p, b in enumerate(morse.bases))
        assert euler_cells == euler_crit, (m, d, n)
        if m <= 7:  # homology sweep corpus
            h = cellular_homology(m, d, n)
            euler_betti = sum((-1) ** p * b for p, b in enumerate(h.betti_numbers()))
            assert euler_cells == euler_betti, (m, d, n)
    report(9, "chain complex laws", started)


def _run_cli(args, env_seed, out_path):
    env = dict(os.environ)
    env["PYTHONHASHSEED"] = env_seed
    proc = subprocess.run(
        [sys.executable, "-m", "dconf.cli", *args, "--out", str(out_path)],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return out_path.read_bytes()


def test_criterion_10_byte_identical_runs(tmp_path):
    started = time.perf_counter()
    jobs = {
        "homology.json": ["homology", "--m", "3", "--d", "1", "--method", "both"],
        "field.dot": ["field", "--m", "3", "--d", "1", "--format", "dot"],
        "complex.txt": ["gen", "--m", "5", "--d", "2"],
    }
    for name, args in jobs.items():
        first = _run_cli(args, "1", tmp_path / f"a_{name}")
        second = _run_cli(args, "31337", tmp_path / f"b_{name}")
        assert first == second, name
    verify_args = ["verify", "--suite", "quick", "--csv"]
    env = dict(os.environ)
    blobs = []
    for seed, tag in (("1", "a"), ("31337", "b")):
        env["PYTHONHASHSEED"] = seed
        csv_path = tmp_path / f"{tag}_sweep.csv"
        out_path = tmp_path / f"{tag}_verify.json"
        proc = subprocess.run(
            [sys.executable, "-m", "dconf.cli", *verify_args, str(csv_path),
             "--out", str(out_path)],
            capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        blobs.append(csv_path.read_bytes() + out_path.read_bytes())
    assert blobs[0] == blobs[1]
    report(10, "byte-identical repeated runs", started)
