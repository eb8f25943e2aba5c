"""Exact maximum average degree.

mad(g) = max over nonempty subgraphs H of 2|E(H)|/|V(H)|; induced
subgraphs suffice because dropping an edge never raises the ratio.  Small
graphs are swept exhaustively with a subset DP over numpy arrays; larger
ones binary-search the density with Goldberg's max-flow feasibility test
and snap the answer to the unique nearby fraction with denominator at
most |V|.  Values are exact rationals throughout.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import UndefinedInputError
from .graph import OrientedGraph

BRUTE_FORCE_LIMIT = 20


def _popcounts(values: np.ndarray) -> np.ndarray:
    counts = np.zeros_like(values)
    v = values.copy()
    while v.any():
        counts += v & 1
        v >>= 1
    return counts


def _mad_subsets(g: OrientedGraph) -> Fraction:
    n = g.vertex_count
    adj = g.adjacency_masks
    # edge_counts[S] = number of edges inside subset S, built one vertex at a time
    edge_counts = np.zeros(1, dtype=np.int64)
    for v in range(n):
        prefix_mask = adj[v] & ((1 << v) - 1)
        subsets = np.arange(edge_counts.shape[0], dtype=np.int64)
        into_v = _popcounts(subsets & prefix_mask)
        edge_counts = np.concatenate([edge_counts, edge_counts + into_v])
    sizes = _popcounts(np.arange(edge_counts.shape[0], dtype=np.int64))
    best = Fraction(0)
    for size in range(1, n + 1):
        where = sizes == size
        if not where.any():
            continue
        m = int(edge_counts[where].max())
        cand = Fraction(2 * m, size)
        if cand > best:
            best = cand
    return best


def _denser_subgraph(g: OrientedGraph, density: Fraction):
    """Vertex set of some subgraph strictly denser than ``density``, or None.

    Goldberg network: source -> each edge node (capacity 1), edge node ->
    endpoints (infinite), vertex -> sink (capacity density), everything
    scaled by the density's denominator to stay integral.  The source side
    of a min cut below |E| is exactly such a vertex set.
    """
    from scipy.sparse.csgraph import breadth_first_order

    n, m = g.vertex_count, g.arc_count
    if m == 0:
        return None
    a, b = density.numerator, density.denominator
    source, sink = n + m, n + m + 1
    inf = m * b + 1
    rows, cols, caps = [], [], []
    for i, (t, h) in enumerate(g.edges):
        rows += [source, n + i, n + i]
        cols += [n + i, t, h]
        caps += [b, inf, inf]
    for v in range(n):
        rows.append(v)
        cols.append(sink)
        caps.append(a)
    capacity = csr_matrix(
        (np.array(caps, dtype=np.int32), (rows, cols)),
        shape=(n + m + 2, n + m + 2),
    )
    result = maximum_flow(capacity, source, sink)
    if result.flow_value >= m * b:
        return None
    residual = capacity - result.flow
    residual.data = np.maximum(residual.data, 0)
    residual.eliminate_zeros()
    reach = breadth_first_order(residual, source, return_predecessors=False)
    side = set(int(x) for x in reach)
    return tuple(v for v in range(n) if v in side)


def _mad_flow(g: OrientedGraph) -> Fraction:
    n = g.vertex_count
    if g.arc_count == 0:
        return Fraction(0)
    density = Fraction(g.arc_count, n)
    # each round either proves optimality or strictly improves the density,
    # and only finitely many subgraph densities exist
    while True:
        better = _denser_subgraph(g, density)
        if better is None:
            return 2 * density
        sub = set(better)
        inside = sum(1 for lo, hi in g.edges if lo in sub and hi in sub)
        density = Fraction(inside, len(sub))


def mad_exact(g: OrientedGraph, brute_force_limit: int = BRUTE_FORCE_LIMIT) -> Fraction:
    """Exact maximum average degree of the underlying graph."""
    if g.vertex_count == 0:
        raise UndefinedInputError("mad is undefined on the empty graph")
    if g.vertex_count <= brute_force_limit:
        return _mad_subsets(g)
    return _mad_flow(g)
