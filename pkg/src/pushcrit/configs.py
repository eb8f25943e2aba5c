"""Reducible-configuration gadgets and their exhaustive verifier.

A configuration is a gadget graph with a designated boundary: the
boundary vertices get arbitrary colors, the rest (the set X) is uncolored
and pushable.  The configuration is reducible when, for every orientation
of the gadget's arcs (taken up to pushing X, which is a free action) and
every boundary coloring, the partial coloring extends.

Parametric configurations are instantiated at the minimal parameter their
reduction argument needs, over every admissible distribution of chain
internal counts (chain pieces hold at most 3 internal 2-vertices because
longer chains are themselves reducible).  The three 6-cycle
configurations additionally constrain the cycle to be directed, which up
to internal pushes is exactly an even-forward-parity constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ConfigError
from .graph import OrientedGraph, forward_parity
from .hom import (
    AT_C3,
    MappingSearcher,
    PartialColoring,
    extend_partial,
    target_index,
)
from .orient import push_class_representatives

CONFIG_IDS = tuple(f"C{i}" for i in range(1, 17))


@dataclass(frozen=True)
class ConfigurationGadget:
    config_id: str
    graph: OrientedGraph
    boundary: frozenset
    params: tuple
    directed_cycles: tuple[tuple[int, ...], ...] = ()

    @property
    def internal(self) -> tuple[int, ...]:
        return tuple(
            v for v in range(self.graph.vertex_count) if v not in self.boundary
        )


class _Builder:
    def __init__(self, config_id: str, params: tuple):
        self.config_id = config_id
        self.params = params
        self.n = 0
        self.arcs: list[tuple[int, int]] = []
        self.boundary: set[int] = set()
        self.cycles: list[tuple[int, ...]] = []

    def vertex(self) -> int:
        v = self.n
        self.n += 1
        return v

    def boundary_vertex(self) -> int:
        v = self.vertex()
        self.boundary.add(v)
        return v

    def arc(self, u: int, v: int):
        self.arcs.append((u, v))

    def chain(self, u: int, v: int, internals: int):
        cur = u
        for _ in range(internals):
            nxt = self.vertex()
            self.arc(cur, nxt)
            cur = nxt
        self.arc(cur, v)

    def hang(self, center: int, internals: int):
        """A chain from center to a fresh boundary vertex."""
        b = self.boundary_vertex()
        self.chain(center, b, internals)

    def directed_cycle_constraint(self, cycle: tuple[int, ...]):
        self.cycles.append(cycle)

    def build(self) -> ConfigurationGadget:
        return ConfigurationGadget(
            self.config_id,
            OrientedGraph(self.n, tuple(self.arcs), name=self.config_id.lower()),
            frozenset(self.boundary),
            self.params,
            tuple(self.cycles),
        )


def _center_with_chains(config_id: str, counts: tuple[int, ...]) -> ConfigurationGadget:
    b = _Builder(config_id, (counts,))
    center = b.vertex()
    for t in counts:
        b.hang(center, t)
    return b.build()


def _two_centers(
    config_id: str,
    link_internals: int,
    u_counts: tuple[int, ...],
    v_counts: tuple[int, ...],
) -> ConfigurationGadget:
    b = _Builder(config_id, (link_internals, u_counts, v_counts))
    u, v = b.vertex(), b.vertex()
    b.chain(u, v, link_internals)
    for t in u_counts:
        b.hang(u, t)
    for t in v_counts:
        b.hang(v, t)
    return b.build()


def _star_of_centers(
    config_id: str, hub_counts: tuple[int, ...], leaf_count: int
) -> ConfigurationGadget:
    """Hub 1-chain-adjacent to ``leaf_count`` centers of shape (3, 2)."""
    b = _Builder(config_id, (hub_counts, leaf_count))
    hub = b.vertex()
    for _ in range(leaf_count):
        leaf = b.vertex()
        b.chain(hub, leaf, 1)
        b.hang(leaf, 3)
        b.hang(leaf, 2)
    for t in hub_counts:
        b.hang(hub, t)
    return b.build()


def _six_cycle(
    config_id: str,
    order: str,
    x_counts: tuple[int, ...],
    y_counts: tuple[int, ...],
    z_counts: tuple[int, ...],
) -> ConfigurationGadget:
    """Directed 6-cycle through x, y, z with hanging chains.

    ``order`` "xy" walks x,y,u1,z,u2,u3; "xu" walks x,u1,y,u2,z,u3.
    A z entry of -1 hangs a direct boundary neighbor off z.
    """
    b = _Builder(config_id, (order, x_counts, y_counts, z_counts))
    x, y, z = b.vertex(), b.vertex(), b.vertex()
    u1, u2, u3 = b.vertex(), b.vertex(), b.vertex()
    if order == "xy":
        cycle = (x, y, u1, z, u2, u3)
    else:
        cycle = (x, u1, y, u2, z, u3)
    for i, v in enumerate(cycle):
        b.arc(v, cycle[(i + 1) % 6])
    for center, counts in ((x, x_counts), (y, y_counts), (z, z_counts)):
        for t in counts:
            if t < 0:
                b.arc(center, b.boundary_vertex())
            else:
                b.hang(center, t)
    b.directed_cycle_constraint(cycle)
    return b.build()


def gadgets_for(config_id: str) -> list[ConfigurationGadget]:
    """Every gadget instance realizing one configuration."""
    cid = config_id.upper()
    if cid == "C1":
        b = _Builder("C1", (4,))
        x, y = b.boundary_vertex(), b.boundary_vertex()
        b.chain(x, y, 4)
        return [b.build()]
    if cid == "C2":
        return [_center_with_chains("C2", c) for c in ((3, 3, 1), (3, 2, 2))]
    if cid == "C3":
        return [_center_with_chains("C3", (3, 3, 3, 2))]
    if cid == "C4":
        return [_two_centers("C4", 0, (3, 2), (3, 2))]
    if cid == "C5":
        return [_two_centers("C5", 0, (3, 3), (3, 3, 3))]
    if cid == "C6":
        return [_two_centers("C6", 1, (3, 2), (3, 3, 2))]
    if cid == "C7":
        return [
            _two_centers("C7", 1, u_counts, (3, 3, 3))
            for u_counts in ((3, 1), (2, 2))
        ]
    if cid == "C8":
        b = _Builder("C8", ())
        u, w, v = b.vertex(), b.vertex(), b.vertex()
        b.arc(u, w)
        b.chain(u, v, 1)
        b.hang(u, 3)
        b.hang(w, 3)
        b.hang(w, 2)
        for t in (3, 3, 3):
            b.hang(v, t)
        return [b.build()]
    if cid == "C9":
        b = _Builder("C9", ())
        u, w, v = b.vertex(), b.vertex(), b.vertex()
        b.arc(u, w)
        b.chain(u, v, 1)
        b.hang(u, 3)
        b.hang(u, 3)
        b.hang(v, 3)
        b.hang(v, 2)
        b.hang(w, 3)
        b.hang(w, 3)
        return [b.build()]
    if cid == "C10":
        b = _Builder("C10", ())
        u, w, v = b.vertex(), b.vertex(), b.vertex()
        b.chain(u, w, 1)
        b.chain(u, v, 1)
        b.hang(u, 2)
        b.hang(w, 3)
        b.hang(w, 1)
        for t in (3, 3, 3):
            b.hang(v, t)
        return [b.build()]
    if cid == "C11":
        return [_star_of_centers("C11", (3, 2), 2)]
    if cid == "C12":
        return [_star_of_centers("C12", (3,), 3)]
    if cid == "C13":
        return [_star_of_centers("C13", (), 4)]
    if cid == "C14":
        return [_six_cycle("C14", "xy", (3,), (3,), (-1,))]
    if cid == "C15":
        return [_six_cycle("C15", "xy", (3,), (1,), (1,))]
    if cid == "C16":
        return [_six_cycle("C16", "xu", (3,), (2,), (-1,))]
    raise ConfigError(f"unknown configuration id {config_id!r}")


def negative_control_gadget() -> ConfigurationGadget:
    """A non-reducible gadget: one vertex with three boundary in-arcs."""
    b = _Builder("NEG", ())
    v = b.vertex()
    for _ in range(3):
        b.arc(b.boundary_vertex(), v)
    return b.build()


# -- orientation enumeration ---------------------------------------------------


def orientation_representatives(gadget: ConfigurationGadget):
    """All orientations of the gadget, one per pushing-X class."""
    g = gadget.graph
    for arcs in push_class_representatives(
        g.vertex_count, g.edges, gadget.internal
    ):
        yield OrientedGraph(g.vertex_count, arcs)


def _boundary_colorings(boundary: tuple[int, ...], reduce_rotation: bool):
    if not boundary:
        yield {}
        return
    first, rest = boundary[0], boundary[1:]
    first_colors = (0,) if reduce_rotation else (0, 1, 2)
    for c0 in first_colors:
        for others in product((0, 1, 2), repeat=len(rest)):
            coloring = {first: c0}
            coloring.update(zip(rest, others))
            yield coloring


@dataclass(frozen=True)
class ConfigurationCheck:
    gadget: ConfigurationGadget
    ok: bool
    orientations: int
    colorings_per_orientation: int
    cases_checked: int
    counterexample: tuple | None = None

    def to_json_dict(self) -> dict:
        out = {
            "config": self.gadget.config_id,
            "params": repr(self.gadget.params),
            "ok": self.ok,
            "orientations": self.orientations,
            "colorings_per_orientation": self.colorings_per_orientation,
            "cases_checked": self.cases_checked,
        }
        if self.counterexample is not None:
            arcs, coloring = self.counterexample
            out["counterexample"] = {
                "arcs": [list(a) for a in arcs],
                "boundary_coloring": {str(v): c for v, c in sorted(coloring.items())},
            }
        return out


def verify_configuration(
    gadget: ConfigurationGadget, reduce_rotation: bool = True
) -> ConfigurationCheck:
    """Check extendability over all orientations and boundary colorings.

    Rotating all three colors commutes with extension (the target's color
    classes are rotation symmetric), so by default the first boundary
    color is pinned to 0; pass reduce_rotation=False for the full sweep.
    """
    boundary = tuple(sorted(gadget.boundary))
    colorings = list(_boundary_colorings(boundary, reduce_rotation))
    at_index = target_index(AT_C3)
    orientations = 0
    cases = 0
    for oriented in orientation_representatives(gadget):
        if any(forward_parity(oriented, c) != 0 for c in gadget.directed_cycles):
            continue
        orientations += 1
        template = [
            1 if v in gadget.boundary else 0b111111
            for v in range(oriented.vertex_count)
        ]
        searcher = MappingSearcher(oriented, at_index, template)
        for coloring in colorings:
            cases += 1
            cert = extend_partial(
                oriented, PartialColoring.of(coloring), searcher=searcher
            )
            if cert is None:
                return ConfigurationCheck(
                    gadget,
                    False,
                    orientations,
                    len(colorings),
                    cases,
                    (oriented.arcs, coloring),
                )
    return ConfigurationCheck(gadget, True, orientations, len(colorings), cases)
