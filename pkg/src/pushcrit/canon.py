"""Canonical forms under isomorphism and under isomorphism x push.

The underlying simple graph is canonically labeled by equitable-partition
refinement with individualization backtracking; leaves of the search are
complete labelings, the lexicographically least adjacency bitstring wins,
and pairs of leaves with equal certificates yield automorphism generators
(used both to prune the search and, later, to enumerate the full coset of
canonical labelings).

The oriented canonical form then minimizes, over that coset, an encoding
of the orientation.  For the push-quotiented form the orientation is first
normalized: a BFS forest of the canonical graph is forced to point from
parent to child by pushing (which is always possible and unique up to
pushing whole components, an identity), and only the co-forest direction
bits remain.  Equal byte strings therefore mean exactly "isomorphic after
pushing some set".
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .errors import IncompatibleInputError
from .graph import OrientedGraph

_FORM_MAGIC_PUSH = b"P1"
_FORM_MAGIC_ISO = b"O1"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by degree into each target cell."""
    changed = True
    while changed:
        changed = False
        for target in cells:
            tmask = 0
            for v in target:
                tmask |= 1 << v
            newcells = []
            for cell in cells:
                if len(cell) == 1:
                    newcells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(_popcount(adj[v] & tmask), []).append(v)
                if len(groups) > 1:
                    changed = True
                for key in sorted(groups):
                    newcells.append(groups[key])
            if changed:
                cells = newcells
                break
    return cells


def _leaf_cert(adj: tuple[int, ...], inv: list[int]) -> int:
    """Upper-triangle adjacency bits of the relabeled graph, as one int."""
    n = len(adj)
    bits = 0
    for p in range(n):
        row = adj[inv[p]]
        for q in range(p + 1, n):
            bits = bits << 1 | (row >> inv[q] & 1)
    return bits


def canonical_data(adj: tuple[int, ...]):
    """Canonically label the graph given as adjacency bitmasks.

    Returns (cert, labeling, generators): ``cert`` is the minimized
    upper-triangle bitstring as an int, ``labeling`` maps vertex -> canonical
    position, and ``generators`` generate the full automorphism group.
    """
    n = len(adj)
    if n == 0:
        return 0, (), []
    best: dict = {"cert": None, "perm": None}
    first: dict = {"cert": None, "perm": None}
    gens: list[tuple[int, ...]] = []

    def stabilizer_orbits(prefix: list[int]):
        # Union-find over vertices, built from the generators that fix the
        # whole individualization prefix pointwise (a subgroup of the true
        # stabilizer, so pruning with it is conservative).
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for g in gens:
            if all(g[p] == p for p in prefix):
                for v in range(n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[a] = b
        return find

    def recurse(cells: list[list[int]], prefix: list[int]):
        cells = _refine(adj, cells)
        target_idx = -1
        target_size = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target_size is None or len(c) < target_size):
                target_idx, target_size = i, len(c)
        if target_idx == -1:
            inv = [c[0] for c in cells]
            cert = _leaf_cert(adj, inv)
            if first["cert"] is None:
                first["cert"] = cert
                first["perm"] = inv[:]
            # two labelings with the same image graph give an automorphism;
            # harvesting against both the first and the best leaf is what
            # makes the generator set complete
            for ref in (first, best):
                if ref["cert"] == cert and ref["perm"] is not None:
                    perm_new = [0] * n
                    for pos, v in enumerate(inv):
                        perm_new[v] = pos
                    sigma = tuple(ref["perm"][perm_new[v]] for v in range(n))
                    if sigma != tuple(range(n)) and sigma not in gens:
                        gens.append(sigma)
                    break
            if best["cert"] is None or cert < best["cert"]:
                best["cert"] = cert
                best["perm"] = inv[:]
            return
        cell = cells[target_idx]
        find = stabilizer_orbits(prefix)
        tried: list[int] = []
        for v in sorted(cell):
            if any(find(v) == find(u) for u in tried):
                continue
            tried.append(v)
            newcells = (
                cells[:target_idx]
                + [[v], [u for u in cell if u != v]]
                + cells[target_idx + 1 :]
            )
            recurse(newcells, prefix + [v])
            find = stabilizer_orbits(prefix)

    recurse([list(range(n))], [])
    inv = best["perm"]
    labeling = [0] * n
    for pos, v in enumerate(inv):
        labeling[v] = pos
    return best["cert"], tuple(labeling), gens


def closure(n: int, gens: list[tuple[int, ...]], limit: int = 2_000_000):
    """All elements generated by ``gens`` (BFS closure)."""
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                comp = tuple(s[g[v]] for v in range(n))
                if comp not in group:
                    group.add(comp)
                    nxt.append(comp)
                    if len(group) > limit:
                        raise IncompatibleInputError("automorphism group too large")
        frontier = nxt
    return sorted(group)


def orbit_of(seed, gens, apply):
    """Orbit of ``seed`` under the generators, via ``apply(gen, item)``."""
    seen = {seed}
    queue = deque([seed])
    while queue:
        item = queue.popleft()
        for g in gens:
            image = apply(g, item)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def _bfs_forest(n: int, adj: tuple[int, ...]):
    """BFS forest from the lowest vertex of each component.

    Returns (order, parent) with parent[root] = -1; neighbors are visited
    in increasing index so the forest is reproducible.
    """
    parent = [-2] * n
    order = []
    for root in range(n):
        if parent[root] != -2:
            continue
        parent[root] = -1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            m = adj[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if parent[u] == -2:
                    parent[u] = v
                    queue.append(u)
    return order, parent


def _encode_form(magic: bytes, n: int, edges, bits: int, nbits: int) -> bytes:
    if n > 0xFFFF:
        raise IncompatibleInputError("graph too large for canonical encoding")
    out = bytearray(magic)
    out += n.to_bytes(2, "big")
    out += len(edges).to_bytes(3, "big")
    for lo, hi in edges:
        out += lo.to_bytes(2, "big") + hi.to_bytes(2, "big")
    out += bits.to_bytes((nbits + 7) // 8 or 1, "big")
    return bytes(out)


def _canonical_orientation_form(g: OrientedGraph, quotient_push: bool) -> bytes:
    n = g.vertex_count
    adj = g.adjacency_masks
    cert, labeling, gens = canonical_data(adj)
    group = closure(n, gens)

    # canonical underlying graph, shared by every labeling in the coset
    canon_edges = sorted(
        (min(labeling[a], labeling[b]), max(labeling[a], labeling[b]))
        for a, b in g.edges
    )
    canon_adj = [0] * n
    for lo, hi in canon_edges:
        canon_adj[lo] |= 1 << hi
        canon_adj[hi] |= 1 << lo
    order, parent = _bfs_forest(n, tuple(canon_adj))
    tree_edges = {(min(v, parent[v]), max(v, parent[v])) for v in range(n) if parent[v] >= 0}
    cotree = [e for e in canon_edges if e not in tree_edges]
    enc_edges = cotree if quotient_push else canon_edges

    best_bits = None
    for sigma in group:
        pi = [0] * n
        for v in range(n):
            pi[v] = labeling[sigma[v]]
        direction = {}
        for t, h in g.arcs:
            a, b = pi[t], pi[h]
            direction[(a, b) if a < b else (b, a)] = 1 if a < b else 0
        if quotient_push:
            x = [0] * n
            for v in order:
                p = parent[v]
                if p >= 0:
                    lo, hi = (p, v) if p < v else (v, p)
                    # want the tree arc to run parent -> child after pushing
                    want = 1 if p < v else 0
                    x[v] = x[p] ^ direction[(lo, hi)] ^ want
            bits = 0
            for lo, hi in cotree:
                bits = bits << 1 | (direction[(lo, hi)] ^ x[lo] ^ x[hi])
        else:
            bits = 0
            for lo, hi in canon_edges:
                bits = bits << 1 | direction[(lo, hi)]
        if best_bits is None or bits < best_bits:
            best_bits = bits
    magic = _FORM_MAGIC_PUSH if quotient_push else _FORM_MAGIC_ISO
    return _encode_form(magic, n, canon_edges, best_bits or 0, len(enc_edges))


def canonical_form(g: OrientedGraph) -> bytes:
    """Byte string equal for two graphs iff they are pushably isomorphic."""
    return _canonical_orientation_form(g, quotient_push=True)


def oriented_canonical_form(g: OrientedGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic digraphs."""
    return _canonical_orientation_form(g, quotient_push=False)


def are_pushably_isomorphic(g: OrientedGraph, h: OrientedGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def underlying_cert(g: OrientedGraph) -> bytes:
    """Canonical certificate of the underlying simple graph."""
    cert, _, _ = canonical_data(g.adjacency_masks)
    n = g.vertex_count
    nbits = n * (n - 1) // 2
    return b"U1" + n.to_bytes(2, "big") + cert.to_bytes((nbits + 7) // 8 or 1, "big")


@lru_cache(maxsize=4096)
def _cached_canonical_form(key):
    n, arcs = key
    return canonical_form(OrientedGraph(n, arcs))


def canonical_form_cached(g: OrientedGraph) -> bytes:
    return _cached_canonical_form((g.vertex_count, g.arcs))
