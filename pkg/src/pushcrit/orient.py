"""Enumeration of orientations up to pushing a chosen vertex set.

Pushing a set S flips exactly the arcs crossing S, so the push group acts
linearly on orientation vectors over GF(2).  A BFS forest grown from the
non-movable vertices hands each movable vertex one "pivot" edge; forcing
pivots to point parent-to-child is a triangular system in the pushes,
hence every push class contains exactly one normalized orientation.  The
remaining free edges then enumerate the classes.  Components consisting
entirely of movable vertices anchor one vertex each, because pushing a
whole component is the identity.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import IncompatibleInputError
from .graph import Arc


def push_class_representatives(
    n: int,
    edges: Sequence[Arc],
    movable: Iterable[int],
    fixed_arcs: Sequence[Arc] = (),
):
    """Yield one arc tuple per orientation class under pushing ``movable``.

    ``edges`` are underlying (lo, hi) pairs; ``fixed_arcs`` predetermine
    the direction of some of them and must not touch movable vertices.
    """
    movable = set(movable)
    fixed_edges: dict[tuple[int, int], Arc] = {}
    for t, h in fixed_arcs:
        if t in movable or h in movable:
            raise IncompatibleInputError(
                "predetermined arcs must avoid movable vertices"
            )
        fixed_edges[(t, h) if t < h else (h, t)] = (t, h)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for lo, hi in edges:
        if (lo, hi) not in fixed_edges:
            adjacency[lo].append(hi)
            adjacency[hi].append(lo)

    visited = [v not in movable for v in range(n)]
    pivot: dict[tuple[int, int], Arc] = {}
    queue = deque(v for v in range(n) if visited[v])
    scan = 0  # next candidate anchor for an all-movable component
    while True:
        while queue:
            u = queue.popleft()
            for w in sorted(adjacency[u]):
                if not visited[w]:
                    visited[w] = True
                    pivot[(u, w) if u < w else (w, u)] = (u, w)
                    queue.append(w)
        while scan < n and visited[scan]:
            scan += 1
        if scan == n:
            break
        visited[scan] = True  # anchor of an all-movable component
        queue.append(scan)

    free_edges = [
        e
        for e in sorted((min(t, h), max(t, h)) for t, h in edges)
        if e not in pivot and e not in fixed_edges
    ]
    base = [fixed_edges[e] for e in sorted(fixed_edges)] + [
        pivot[e] for e in sorted(pivot)
    ]
    for bits in range(1 << len(free_edges)):
        arcs = list(base)
        for i, (lo, hi) in enumerate(free_edges):
            arcs.append((lo, hi) if bits >> i & 1 else (hi, lo))
        yield tuple(arcs)
