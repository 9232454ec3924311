import pytest

from conftest import cellular_homology, skeleton_field, skeleton_table
from dconf import (DiscreteField, build_field, check_acyclic,
                   check_forced_redundancy, check_maximal, classify,
                   enumerate_cells, field_dot, SimplicialComplex)


def c(*coords):
    return tuple(tuple(x) for x in coords)


K3_MATCHES = [
    (c((1,), (2,)), c((1,), (2, 3)), 2, 3),
    (c((2,), (1,)), c((2,), (1, 3)), 2, 3),
    (c((3,), (1,)), c((3,), (1, 2)), 2, 2),
    (c((1,), (3,)), c((1, 2), (3,)), 1, 2),
    (c((3,), (2,)), c((1, 3), (2,)), 1, 1),
]


def test_k3_field_matches_in_construction_order():
    field = skeleton_field(2, 1)
    assert [tuple(m) for m in field.matches] == K3_MATCHES
    assert field.critical_cells() == [c((2,), (3,)), c((2, 3), (1,))]


def test_k4_critical_cells():
    # worked out case by case from the closed-form classification (mu=4, kappa=2)
    field = skeleton_field(3, 1)
    expected = {
        c((3,), (4,)),
        c((1, 2), (4,)), c((1, 4), (3,)), c((3, 4), (2,)),
        c((4,), (1, 2)), c((2,), (1, 3)), c((1,), (2, 3)), c((3,), (1, 2)),
    }
    assert set(field.critical_cells()) == expected
    assert len(field.critical_cells(0)) == 1
    assert len(field.critical_cells(1)) == 7


@pytest.mark.parametrize("m,d,n", [(2, 1, 2), (3, 1, 2), (4, 2, 2), (3, 1, 3)])
def test_match_count_identity(m, d, n):
    table = skeleton_table(m, d, n)
    field = skeleton_field(m, d, n)
    assert 2 * len(field.matches) == len(table) - len(field.critical_cells())


def test_status_partition():
    table = skeleton_table(3, 1)
    field = skeleton_field(3, 1)
    for m in field.matches:
        assert field.status(m.lower) == "redundant"
        assert field.status(m.upper) == "collapsible"
        p = table.position(m.lower)[0]
        assert table.position(m.upper)[0] == p + 1
    with pytest.raises(KeyError):
        field.status(c((9,), (1,)))


def test_build_field_is_deterministic():
    a = build_field(skeleton_table(4, 2))
    b = build_field(skeleton_table(4, 2))
    assert a.matches == b.matches


@pytest.mark.parametrize("m,d,n", [(2, 1, 2), (3, 1, 2), (4, 1, 2), (4, 2, 2),
                                   (5, 2, 2), (5, 5, 2), (3, 1, 3), (4, 2, 3)])
def test_checkers_pass_on_built_fields(m, d, n):
    field = skeleton_field(m, d, n)
    assert check_acyclic(field)
    assert check_maximal(field)
    assert check_forced_redundancy(field)


@pytest.mark.parametrize("m,d", [(2, 1), (3, 1), (4, 2), (5, 3)])
def test_euler_characteristic_matches_critical_cells(m, d):
    table = skeleton_table(m, d)
    field = skeleton_field(m, d)
    by_cells = sum((-1) ** p * len(table.cells(p))
                   for p in range(table.top_dimension + 1))
    crit = field.critical_cells()
    by_crit = sum((-1) ** table.position(cell)[0] for cell in crit)
    assert by_cells == by_crit
    h = cellular_homology(m, d)
    assert by_cells == sum((-1) ** p * b for p, b in enumerate(h.betti_numbers()))


HEX_CYCLE = [
    (c((1,), (2,)), c((1,), (2, 3))),
    (c((1,), (3,)), c((1, 2), (3,))),
    (c((2,), (3,)), c((2,), (1, 3))),
    (c((2,), (1,)), c((2, 3), (1,))),
    (c((3,), (1,)), c((3,), (1, 2))),
    (c((3,), (2,)), c((1, 3), (2,))),
]


def test_hand_built_cycle_is_detected():
    # perfect matching running all the way around the hexagon
    table = skeleton_table(2, 1)
    field = DiscreteField(table, HEX_CYCLE)
    assert len(field.matches) == 6
    assert not check_acyclic(field)


def test_empty_field_is_acyclic_but_not_maximal():
    table = skeleton_table(2, 1)
    field = DiscreteField(table)
    assert check_acyclic(field)
    assert not check_maximal(field)  # 1|2 critical below critical 1|2,3
    assert check_forced_redundancy(field)  # vacuous without matches


def test_forced_redundancy_violations():
    # gamma = upper minus a later vertex left critical
    table = skeleton_table(2, 1)
    field = DiscreteField(table, [(c((2,), (3,)), c((1, 2), (3,)))])
    assert not check_forced_redundancy(field)
    # a chain where the forced cell is redundant through a later insertion
    table4 = skeleton_table(3, 1)
    good = DiscreteField(table4, [
        (c((2,), (4,)), c((1, 2), (4,))),
        (c((1,), (4,)), c((1, 3), (4,))),
    ])
    assert check_forced_redundancy(good)
    # gamma collapsible instead of redundant
    bad = DiscreteField(table4, [
        (c((1,), (3, 4)), c((1, 2), (3, 4))),
        (c((1,), (4,)), c((1, 2), (4,))),
    ])
    assert not check_forced_redundancy(bad)


def test_match_validation():
    table = skeleton_table(2, 1)
    with pytest.raises(ValueError, match="already matched"):
        DiscreteField(table, [
            (c((1,), (2,)), c((1,), (2, 3))),
            (c((1,), (3,)), c((1,), (2, 3))),
        ])
    with pytest.raises(ValueError):
        DiscreteField(table, [(c((1,), (2,)), c((1, 2), (3,)))])
    with pytest.raises(ValueError, match="belong"):
        DiscreteField(table, [(c((9,), (2,)), c((9,), (2, 3)))])


def test_classify_report_k3():
    report = classify(skeleton_field(2, 1))
    assert report.counts == ((1, 5, 0), (1, 0, 5))
    assert report.critical_cells == (c((2,), (3,)), c((2, 3), (1,)))
    assert report.acyclic and report.maximal
    assert report.total_cells == 12
    payload = report.to_json_dict()
    assert payload["dimensions"][0] == {
        "dim": 0, "critical": 1, "redundant": 5, "collapsible": 0}
    assert payload["critical_cells"] == ["2|3", "2,3|1"]


def test_classify_counts_when_dimensions_merge():
    # two points on the 2-skeleton of the 4-simplex: the batch in dimension
    # d and the extra top-range cell land in the same dimension, 8 + 1 = 9
    report = classify(skeleton_field(4, 2))
    assert [crit for (crit, _, _) in report.counts] == [1, 0, 9, 0]
    assert report.acyclic and report.maximal


def test_classify_empty_table():
    lonely = SimplicialComplex([(1,)])
    field = build_field(enumerate_cells(lonely, 2))
    report = classify(field)
    assert report.counts == ()
    assert report.critical_cells == ()
    assert report.total_cells == 0


def test_field_dot_output():
    field = skeleton_field(2, 1)
    dot = field_dot(field)
    assert dot.startswith("digraph gradient_field {")
    assert '"2|3" [peripheries=2];' in dot
    assert '"2,3|1" [peripheries=2];' in dot
    assert '"1|2" -> "1|2,3" [color=red penwidth=2];' in dot
    assert '"1|2,3" -> "1|3";' in dot
    assert dot == field_dot(field)
    only_zero = field_dot(field, dimensions=[0])
    assert '"1|2,3"' not in only_zero and '"1|2"' in only_zero
    assert "->" not in only_zero


def test_one_point_space_is_the_complex_itself():
    table = skeleton_table(2, 1, 1)
    assert len(table) == 6
    field = skeleton_field(2, 1, 1)
    assert check_acyclic(field) and check_maximal(field)
    assert check_forced_redundancy(field)
    h = cellular_homology(2, 1, 1)
    assert h.betti_numbers() == (1, 1)
