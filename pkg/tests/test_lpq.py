"""Distance-constrained labelings and span search."""

from __future__ import annotations

import pytest

import pushcrit as pc
from pushcrit.errors import ConfigError
from pushcrit.lpq import (
    VARIANT_ORIENTED,
    VARIANT_TWO_DIPATH,
    LpqLabeling,
    two_dipath_pairs,
)


def test_builtin_labeling_2_1():
    lab = pc.at_c3_labeling(2, 1)
    assert sorted(lab.labels) == [0, 1, 3, 4, 6, 7]
    assert lab.span == 7
    assert pc.check_lpq_labeling(pc.fixture("at_c3"), lab).ok


def test_builtin_labeling_1_1():
    lab = pc.at_c3_labeling(1, 1)
    assert sorted(lab.labels) == [0, 1, 2, 3, 4, 5]
    assert lab.span == 5


@pytest.mark.parametrize("p", range(1, 6))
def test_builtin_labeling_all_pairs(p):
    for q in range(1, p + 1):
        lab = pc.at_c3_labeling(p, q)
        assert lab.span == 2 * p + 3 * q
        assert pc.check_lpq_labeling(pc.fixture("at_c3"), lab).ok


def test_pq_order_enforced():
    with pytest.raises(ConfigError):
        pc.at_c3_labeling(1, 2)
    with pytest.raises(ConfigError):
        pc.lpq_span_search(pc.directed_cycle(3), 1, 2)


def test_all_zero_labeling_fails_with_pair():
    g = pc.OrientedGraph(2, ((0, 1),))
    lab = LpqLabeling(1, 1, (0, 0), VARIANT_TWO_DIPATH)
    check = pc.check_lpq_labeling(g, lab)
    assert not check.ok
    assert check.violation == ("adjacent", (0, 1))


def test_two_dipath_pairs_small():
    g = pc.OrientedGraph(4, ((0, 1), (1, 2), (3, 1)))
    assert two_dipath_pairs(g) == frozenset({(0, 2), (2, 3)})


def test_dipath_distance_enforced():
    g = pc.OrientedGraph(3, ((0, 1), (1, 2)))
    lab = LpqLabeling(2, 2, (0, 3, 1), VARIANT_TWO_DIPATH)
    check = pc.check_lpq_labeling(g, lab)
    assert not check.ok and check.violation == ("two_dipath", (0, 2))


def test_oriented_variant_rejects_opposite_arcs():
    # two arcs running in opposite directions between the label classes
    g = pc.OrientedGraph(4, ((0, 1), (3, 2)))
    lab = LpqLabeling(1, 1, (0, 5, 0, 5), VARIANT_ORIENTED)
    check = pc.check_lpq_labeling(g, lab)
    assert not check.ok and check.violation[0] == "opposite_arcs"
    as_dipath = LpqLabeling(1, 1, (0, 5, 0, 5), VARIANT_TWO_DIPATH)
    assert pc.check_lpq_labeling(g, as_dipath).ok


def test_span_search_confirms_2_1_bound():
    at = pc.fixture("at_c3")
    oriented = pc.lpq_span_search(at, 2, 1, VARIANT_ORIENTED)
    dipath = pc.lpq_span_search(at, 2, 1, VARIANT_TWO_DIPATH)
    assert oriented is not None and oriented <= 7
    assert dipath is not None and dipath <= oriented


@pytest.mark.parametrize("p,q", [(1, 1), (3, 2), (5, 3)])
def test_span_chain_bounded_by_builtin(p, q):
    at = pc.fixture("at_c3")
    dipath = pc.lpq_span_search(at, p, q, VARIANT_TWO_DIPATH)
    oriented = pc.lpq_span_search(at, p, q, VARIANT_ORIENTED)
    assert dipath <= oriented <= 2 * p + 3 * q


def test_span_search_vertex_limit():
    with pytest.raises(ConfigError):
        pc.lpq_span_search(pc.fixture("e1"), 2, 1)


def test_span_search_trivial_graph():
    g = pc.OrientedGraph(2, ((0, 1),))
    assert pc.lpq_span_search(g, 2, 1, VARIANT_TWO_DIPATH) == 2
    assert pc.lpq_span_search(g, 3, 1, VARIANT_ORIENTED) == 3
