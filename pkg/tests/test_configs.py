"""Configuration gadgets and the extendability verifier."""

from __future__ import annotations

import pytest

import pushcrit as pc
from pushcrit.configs import (
    gadgets_for,
    negative_control_gadget,
    orientation_representatives,
    verify_configuration,
)
from pushcrit.errors import ConfigError
from pushcrit.graph import forward_parity


def test_gadget_shapes():
    (c1,) = gadgets_for("C1")
    assert c1.graph.vertex_count == 6 and c1.graph.arc_count == 5
    assert len(c1.boundary) == 2 and len(c1.internal) == 4
    c2s = gadgets_for("C2")
    assert {g.params for g in c2s} == {((3, 3, 1),), ((3, 2, 2),)}
    (c4,) = gadgets_for("C4")
    assert c4.graph.vertex_count == 16 and c4.graph.arc_count == 15
    (c13,) = gadgets_for("C13")
    assert c13.graph.vertex_count == 37 and len(c13.internal) == 29
    (c14,) = gadgets_for("C14")
    assert c14.directed_cycles and len(c14.directed_cycles[0]) == 6


def test_unknown_config_rejected():
    with pytest.raises(ConfigError):
        gadgets_for("C17")


def test_orientation_class_counts():
    (c1,) = gadgets_for("C1")
    assert len(list(orientation_representatives(c1))) == 2
    (c3,) = gadgets_for("C3")
    reps = list(orientation_representatives(c3))
    assert len(reps) == 2 ** (c3.graph.arc_count - len(c3.internal))
    # representatives are pairwise inequivalent under internal pushes
    seen = set()
    for g in reps:
        key = frozenset(g.arc_set)
        assert key not in seen
        seen.add(key)


def test_directed_cycle_constraint_filters_half():
    (c14,) = gadgets_for("C14")
    reps = list(orientation_representatives(c14))
    directed = [
        g
        for g in reps
        if forward_parity(g, c14.directed_cycles[0]) == 0
    ]
    assert len(reps) == 8 and len(directed) == 4


@pytest.mark.parametrize("cid", ["C1", "C2", "C14", "C15", "C16"])
def test_small_configurations_reduce(cid):
    for gadget in gadgets_for(cid):
        check = verify_configuration(gadget)
        assert check.ok, check.counterexample


def test_negative_control_fails_with_counterexample():
    check = verify_configuration(negative_control_gadget())
    assert not check.ok
    assert check.counterexample is not None
    arcs, coloring = check.counterexample
    assert len(coloring) == 3


def test_rainbow_coloring_reported_by_extend():
    gadget = negative_control_gadget()
    for oriented in orientation_representatives(gadget):
        if all(t in gadget.boundary for t, _ in oriented.arcs):
            rainbow = pc.PartialColoring.of({1: 0, 2: 1, 3: 2})
            assert pc.extend_partial(oriented, rainbow) is None


def test_rotation_reduction_agrees_with_full_sweep():
    for gadget in gadgets_for("C2"):
        reduced = verify_configuration(gadget, reduce_rotation=True)
        full = verify_configuration(gadget, reduce_rotation=False)
        assert reduced.ok == full.ok
        assert full.colorings_per_orientation == 3 * reduced.colorings_per_orientation


def test_gadget_boundary_touches_interior():
    for cid in ("C1", "C5", "C9", "C16"):
        for gadget in gadgets_for(cid):
            interior = set(gadget.internal)
            for b in gadget.boundary:
                assert any(u in interior for u in gadget.graph.neighbors(b))


def test_extend_routes_agree_on_c1_gadget(rng):
    (c1,) = gadgets_for("C1")
    for oriented in orientation_representatives(c1):
        for c0 in range(3):
            for c1_color in range(3):
                pcol = pc.PartialColoring.of(
                    {min(c1.boundary): c0, max(c1.boundary): c1_color}
                )
                fast = pc.extend_partial(oriented, pcol)
                slow = pc.extend_partial_bruteforce(oriented, pcol)
                assert (fast is None) == (slow is None)


def test_extend_routes_agree_on_c2_gadget(rng):
    gadget = gadgets_for("C2")[0]
    boundary = sorted(gadget.boundary)
    for oriented in orientation_representatives(gadget):
        for _ in range(3):
            pcol = pc.PartialColoring.of(
                {b: rng.randrange(3) for b in boundary}
            )
            fast = pc.extend_partial(oriented, pcol)
            slow = pc.extend_partial_bruteforce(oriented, pcol)
            assert (fast is None) == (slow is None)
