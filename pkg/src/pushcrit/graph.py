"""Oriented-graph value type and the push algebra.

An oriented graph is a loop-free digraph with no parallel arcs and no pair
of opposite arcs, so its underlying simple graph determines the arc *set*
up to one direction bit per edge.  Pushing a vertex set S reverses exactly
the arcs with one endpoint in S.  Two orientations of the same labeled
graph are push equivalent when some S carries one onto the other; the
forward-arc parity of every cycle of the underlying graph is a complete
invariant for this, which is what the GF(2) decision procedure below
exploits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    GraphParseError,
    IncompatibleInputError,
    InvalidPushSetError,
    StructuralViolationError,
)

Arc = tuple[int, int]
PushSet = frozenset

POTENTIAL_VERTEX_WEIGHT = 15
POTENTIAL_ARC_WEIGHT = 13


@dataclass(frozen=True)
class OrientedGraph:
    """Immutable oriented graph on vertices ``0 .. vertex_count-1``."""

    vertex_count: int
    arcs: tuple[Arc, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(t), int(h)) for t, h in self.arcs))
        n = self.vertex_count
        if n < 0:
            raise StructuralViolationError("vertex_count must be nonnegative")
        seen_edges = set()
        seen_arcs = set()
        for tail, head in self.arcs:
            if tail == head:
                raise StructuralViolationError(f"loop at vertex {tail}")
            if not (0 <= tail < n and 0 <= head < n):
                raise StructuralViolationError(f"arc ({tail},{head}) out of range")
            if (tail, head) in seen_arcs:
                raise StructuralViolationError(f"parallel arc ({tail},{head})")
            edge = (tail, head) if tail < head else (head, tail)
            if edge in seen_edges:
                raise StructuralViolationError(f"digon on edge {edge}")
            seen_arcs.add((tail, head))
            seen_edges.add(edge)

    # -- derived structure ------------------------------------------------

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_set(self) -> frozenset:
        return frozenset(self.arcs)

    @cached_property
    def edges(self) -> tuple[Arc, ...]:
        """Underlying edges, each as (lo, hi), sorted."""
        return tuple(sorted((min(t, h), max(t, h)) for t, h in self.arcs))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Underlying adjacency as one bitmask per vertex."""
        masks = [0] * self.vertex_count
        for t, h in self.arcs:
            masks[t] |= 1 << h
            masks[h] |= 1 << t
        return tuple(masks)

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.vertex_count)]
        for t, h in self.arcs:
            out[t].append(h)
        return tuple(tuple(sorted(v)) for v in out)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in range(self.vertex_count)]
        for t, h in self.arcs:
            inn[h].append(t)
        return tuple(tuple(sorted(v)) for v in inn)

    def degree(self, v: int) -> int:
        return bin(self.adjacency_masks[v]).count("1")

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(m).count("1") for m in self.adjacency_masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        m = self.adjacency_masks[v]
        return tuple(u for u in range(self.vertex_count) if m >> u & 1)

    # -- simple editing helpers -------------------------------------------

    def with_name(self, name: str) -> "OrientedGraph":
        return OrientedGraph(self.vertex_count, self.arcs, name)

    def delete_arc(self, arc: Arc) -> "OrientedGraph":
        if arc not in self.arc_set:
            raise IncompatibleInputError(f"arc {arc} not present")
        return OrientedGraph(self.vertex_count, tuple(a for a in self.arcs if a != arc))

    def induced_subgraph(self, vertices: Iterable[int]) -> "OrientedGraph":
        """Subgraph induced on ``vertices``, relabeled densely in sorted order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        arcs = tuple(
            (index[t], index[h]) for t, h in self.arcs if t in index and h in index
        )
        return OrientedGraph(len(keep), arcs)

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Relabel vertex v to perm[v]."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise IncompatibleInputError("perm is not a permutation of the vertices")
        return OrientedGraph(
            self.vertex_count, tuple((perm[t], perm[h]) for t, h in self.arcs)
        )

    def strip_isolated(self) -> "OrientedGraph":
        return self.induced_subgraph(
            v for v in range(self.vertex_count) if self.adjacency_masks[v]
        )

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.vertex_count
        comps = []
        for root in range(self.vertex_count):
            if seen[root]:
                continue
            comp = []
            queue = deque([root])
            seen[root] = True
            while queue:
                v = queue.popleft()
                comp.append(v)
                m = self.adjacency_masks[v]
                while m:
                    u = (m & -m).bit_length() - 1
                    m &= m - 1
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1


# -- push algebra ----------------------------------------------------------


def _check_push_set(g: OrientedGraph, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    for v in s:
        if not (0 <= v < g.vertex_count):
            raise InvalidPushSetError(f"vertex {v} outside 0..{g.vertex_count - 1}")
    return s


def push_vertices(g: OrientedGraph, s: Iterable[int]) -> OrientedGraph:
    """Reverse every arc with exactly one endpoint in ``s``."""
    s = _check_push_set(g, s)
    arcs = tuple(
        (h, t) if (t in s) != (h in s) else (t, h) for t, h in g.arcs
    )
    return OrientedGraph(g.vertex_count, arcs, g.name)


def anti_twin(g: OrientedGraph) -> OrientedGraph:
    """Double ``g`` so each vertex gains a pushed twin at index ``v + n``.

    Every arc (u, v) contributes (u, v), (u', v'), (v', u), (v, u'); the
    result has 2n vertices and 4m arcs and homomorphisms into it encode
    pushable homomorphisms into ``g``.
    """
    n = g.vertex_count
    arcs = []
    for t, h in g.arcs:
        arcs += [(t, h), (n + t, n + h), (n + h, t), (h, n + t)]
    return OrientedGraph(2 * n, tuple(arcs))


def is_push_equivalent(g: OrientedGraph, h: OrientedGraph):
    """Return a push set carrying ``g`` onto ``h``, or None.

    Requires identical labeled underlying graphs.  Solves x(u) xor x(v) =
    d(uv) over GF(2) by spanning-forest propagation, where d marks the
    edges whose directions differ, then verifies the co-forest edges.
    """
    if g.vertex_count != h.vertex_count or g.edge_set != h.edge_set:
        raise IncompatibleInputError("graphs must share vertices and underlying edges")
    n = g.vertex_count
    diff = {}
    h_arcs = h.arc_set
    for t, hd in g.arcs:
        edge = (t, hd) if t < hd else (hd, t)
        diff[edge] = 0 if (t, hd) in h_arcs else 1
    x = [0] * n
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            m = g.adjacency_masks[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if not seen[u]:
                    seen[u] = True
                    edge = (v, u) if v < u else (u, v)
                    x[u] = x[v] ^ diff[edge]
                    queue.append(u)
    for (lo, hi), d in diff.items():
        if x[lo] ^ x[hi] != d:
            return None
    s = frozenset(v for v in range(n) if x[v])
    assert push_vertices(g, s).arc_set == h.arc_set
    return s


def attach_path(
    g: OrientedGraph, x: int, y: int, k: int, orientation: str | Sequence[int]
) -> OrientedGraph:
    """Attach a k-arc oriented path from ``x`` to ``y``.

    ``orientation`` gives one bit per arc along the x-to-y traversal,
    1 meaning the arc points toward ``y``.  The k-1 fresh internal
    vertices are appended after the existing ones.
    """
    n = g.vertex_count
    if not (0 <= x < n and 0 <= y < n):
        raise IncompatibleInputError("path endpoints must be existing vertices")
    if k < 1:
        raise IncompatibleInputError("k must be positive")
    bits = [int(b) for b in orientation]
    if len(bits) != k or any(b not in (0, 1) for b in bits):
        raise IncompatibleInputError("orientation must be k bits")
    stops = [x] + [n + i for i in range(k - 1)] + [y]
    new_arcs = [
        (stops[i], stops[i + 1]) if bits[i] else (stops[i + 1], stops[i])
        for i in range(k)
    ]
    return OrientedGraph(n + k - 1, g.arcs + tuple(new_arcs))


def potential(g: OrientedGraph) -> int:
    """Sparseness potential 15|V| - 13|A|."""
    return POTENTIAL_VERTEX_WEIGHT * g.vertex_count - POTENTIAL_ARC_WEIGHT * g.arc_count


def girth(g: OrientedGraph):
    """Length of a shortest cycle of the underlying graph, or None.

    BFS from each vertex; a non-tree edge closing at depths d(u), d(w)
    witnesses a cycle of length d(u) + d(w) + 1 through the root.
    """
    n = g.vertex_count
    best = None
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and dist[v] * 2 >= best:
                break
            m = g.adjacency_masks[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if dist[u] == -1:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif u != parent[v]:
                    cycle = dist[v] + dist[u] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def forward_parity(g: OrientedGraph, cycle: Sequence[int]) -> int:
    """Parity of forward arcs along the closed walk ``cycle``; push invariant."""
    fwd = 0
    for i, v in enumerate(cycle):
        u = cycle[(i + 1) % len(cycle)]
        if (v, u) in g.arc_set:
            fwd ^= 1
        elif (u, v) not in g.arc_set:
            raise IncompatibleInputError(f"({v},{u}) is not an edge")
    return fwd


# -- text format  -----------------------------------------------------------
#
# Optional header "p og <n> <m>"; one arc per line "<tail> <head>"; "#"
# starts a comment; blank lines ignored.  Serialization emits the header
# and arcs sorted by (tail, head).


def serialize_graph(g: OrientedGraph) -> str:
    lines = []
    if g.name:
        lines.append(f"# {g.name}")
    lines.append(f"p og {g.vertex_count} {g.arc_count}")
    lines += [f"{t} {h}" for t, h in sorted(g.arcs)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, name: str | None = None) -> OrientedGraph:
    header = None
    arcs = []
    arc_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("p "):
            if header is not None:
                raise GraphParseError("duplicate header", lineno)
            if arcs:
                raise GraphParseError("header must precede arcs", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "og":
                raise GraphParseError("header must be 'p og <n> <m>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise GraphParseError("header counts must be integers", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected '<tail> <head>', got {line!r}", lineno)
        try:
            arc = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise GraphParseError(f"non-integer endpoint in {line!r}", lineno)
        if arc[0] < 0 or arc[1] < 0:
            raise GraphParseError("negative vertex index", lineno)
        arcs.append(arc)
        arc_lines.append(lineno)
    if header is not None:
        n, m = header
        if m != len(arcs):
            raise GraphParseError(f"header promises {m} arcs, found {len(arcs)}")
    else:
        n = 1 + max((max(t, h) for t, h in arcs), default=-1)
    seen_arcs = set()
    seen_edges = set()
    for (t, h), lineno in zip(arcs, arc_lines):
        if t == h:
            raise GraphParseError(f"loop at vertex {t}", lineno)
        if header is not None and (t >= n or h >= n):
            raise GraphParseError(f"vertex out of range in ({t},{h})", lineno)
        if (t, h) in seen_arcs:
            raise GraphParseError(f"duplicate arc ({t},{h})", lineno)
        edge = (min(t, h), max(t, h))
        if edge in seen_edges:
            raise GraphParseError(f"digon on edge {edge}", lineno)
        seen_arcs.add((t, h))
        seen_edges.add(edge)
    return OrientedGraph(n, tuple(arcs), name)


# -- tiny constructors used throughout --------------------------------------


def directed_cycle(n: int) -> OrientedGraph:
    return OrientedGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def directed_path(n: int) -> OrientedGraph:
    return OrientedGraph(n, tuple((i, i + 1) for i in range(n - 1)))
