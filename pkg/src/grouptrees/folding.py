"""Shared machinery for labeled directed graphs: folding, trimming, canonical form.

A graph here is a plain triple (nv, edges, base): vertices are 0..nv-1, edges
are (src, label, tgt) with labels in 1..rank, and every traversal may read an
edge forward (letter +label) or backward (letter -label).

Folding identifies vertices until no vertex has two equally-labeled outgoing
or two equally-labeled incoming edges; the result is the unique folded
quotient, independent of merge order.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def fold(nv: int, edges: Iterable[tuple[int, int, int]], base: int):
    """Fold the graph; returns (new_nv, new_edges, new_base, vertex_map).

    vertex_map sends old vertex ids to compact new ids.
    """
    uf = _UnionFind(nv)
    edge_list = list(edges)
    changed = True
    while changed:
        changed = False
        out_rep: dict[tuple[int, int], int] = {}
        in_rep: dict[tuple[int, int], int] = {}
        for u, label, v in edge_list:
            fu, fv = uf.find(u), uf.find(v)
            prev = out_rep.get((fu, label))
            if prev is None:
                out_rep[(fu, label)] = v
            elif uf.union(prev, v):
                changed = True
            prev = in_rep.get((fv, label))
            if prev is None:
                in_rep[(fv, label)] = u
            elif uf.union(prev, u):
                changed = True
    roots = sorted({uf.find(v) for v in range(nv)})
    compact = {root: i for i, root in enumerate(roots)}
    vertex_map = {v: compact[uf.find(v)] for v in range(nv)}
    new_edges = sorted({(vertex_map[u], l, vertex_map[v]) for u, l, v in edge_list})
    return len(roots), new_edges, vertex_map[base], vertex_map


def trim(nv: int, edges: list[tuple[int, int, int]], protect: int | None):
    """Repeatedly delete valence-<=1 vertices (never `protect`).

    Returns (kept_vertex_set, kept_edges).  With protect=None the result is the
    maximal subgraph with all valences >= 2 (possibly empty).
    """
    alive = set(range(nv))
    live_edges = set(edges)
    while True:
        degree: dict[int, int] = {v: 0 for v in alive}
        for u, _, v in live_edges:
            degree[u] += 1
            degree[v] += 1
        doomed = {v for v in alive if degree[v] <= 1 and v != protect}
        if not doomed:
            return alive, sorted(live_edges)
        alive -= doomed
        live_edges = {(u, l, v) for u, l, v in live_edges if u in alive and v in alive}


def canonical_form(nv: int, edges: list[tuple[int, int, int]], base: int, rank: int):
    """Canonical renumbering by BFS from the basepoint.

    Requires a folded, connected graph.  At each vertex, neighbors are visited
    along outgoing labels 1..rank then incoming labels 1..rank, which makes the
    numbering — and hence structural equality — canonical.
    Returns (nv, sorted_edge_tuple, perm) with the new basepoint always 0.
    """
    out: dict[int, dict[int, int]] = {}
    inc: dict[int, dict[int, int]] = {}
    for u, l, v in edges:
        if l in out.setdefault(u, {}) or l in inc.setdefault(v, {}):
            raise ValueError("canonical_form requires a folded graph")
        out[u][l] = v
        inc[v][l] = u
    perm = {base: 0}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for l in range(1, rank + 1):
            for nbr in (out.get(v, {}).get(l), inc.get(v, {}).get(l)):
                if nbr is not None and nbr not in perm:
                    perm[nbr] = len(perm)
                    queue.append(nbr)
    if len(perm) != nv:
        raise ValueError("canonical_form requires a connected graph")
    new_edges = tuple(sorted((perm[u], l, perm[v]) for u, l, v in edges))
    return nv, new_edges, perm
