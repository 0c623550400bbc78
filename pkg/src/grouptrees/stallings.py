"""Subgroups of free groups as folded basepointed graphs.

A finitely generated subgroup H of the rank-n free group is represented by its
folded core graph: vertices, edges labeled 1..n, and a basepoint.  Words label
paths (positive letter = edge forward, negative = backward); H is exactly the
set of words labeling closed paths at the basepoint.

The module covers membership, index, intersections (fiber product),
conjugation, free bases read off a spanning tree, and completion of the core
graph to a finite cover witnessing that H is a free factor of a finite-index
subgroup avoiding any designated outside element.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Word, enumerate_words, reduce_letters
from .errors import PreconditionError
from . import folding


class StallingsGraph:
    """Folded core graph with basepoint 0, in canonical (BFS-renumbered) form.

    Equality and hashing are structural: two graphs are equal iff they are the
    same labeled basepointed graph, which (for core graphs) happens iff they
    represent the same subgroup.
    """

    __slots__ = ("rank", "nv", "edges", "_out", "_inc")

    def __init__(self, rank: int, nv: int, edges: tuple[tuple[int, int, int], ...]):
        self.rank = rank
        self.nv = nv
        self.edges = tuple(sorted(edges))
        out: list[dict[int, int]] = [dict() for _ in range(nv)]
        inc: list[dict[int, int]] = [dict() for _ in range(nv)]
        for u, l, v in self.edges:
            if l in out[u] or l in inc[v]:
                raise ValueError("not folded")
            out[u][l] = v
            inc[v][l] = u
        self._out = out
        self._inc = inc

    base = 0  # canonical form always renumbers the basepoint to 0

    # -- construction ---------------------------------------------------------

    @staticmethod
    def _from_raw(nv: int, edges, base: int, rank: int) -> "StallingsGraph":
        """Fold, core-trim (keeping the basepoint), and canonicalize."""
        nv, edges, base, _ = folding.fold(nv, edges, base)
        alive, edges = folding.trim(nv, edges, protect=base)
        # compact surviving vertices before canonical renumbering
        pack = {v: i for i, v in enumerate(sorted(alive))}
        edges = [(pack[u], l, pack[v]) for u, l, v in edges]
        nv, edges, _ = folding.canonical_form(len(alive), edges, pack[base], rank)
        return StallingsGraph(rank, nv, edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StallingsGraph)
            and self.rank == other.rank
            and self.nv == other.nv
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.nv, self.edges))

    def __repr__(self) -> str:
        return f"StallingsGraph(rank={self.rank}, vertices={self.nv}, edges={len(self.edges)})"

    # -- path tracing -----------------------------------------------------------

    def step(self, v: int, letter: int) -> int | None:
        """Follow one letter from vertex v; None when the edge is absent."""
        if letter > 0:
            return self._out[v].get(letter)
        return self._inc[v].get(-letter)

    def trace(self, v: int, letters) -> int | None:
        for l in letters:
            v = self.step(v, l)
            if v is None:
                return None
        return v

    def darts_at(self, v: int):
        """All letters readable at v, in canonical order (1, -1, 2, -2, ...)."""
        for l in range(1, self.rank + 1):
            if l in self._out[v]:
                yield l
            if l in self._inc[v]:
                yield -l


def build_core(generators, rank: int) -> StallingsGraph:
    """Fold the wedge of generator loops into the core graph of <generators>."""
    edges: list[tuple[int, int, int]] = []
    nv = 1
    for gen in generators:
        letters = gen.letters if isinstance(gen, Word) else reduce_letters(gen)
        if not letters:
            continue
        prev = 0
        for i, l in enumerate(letters):
            nxt = 0 if i == len(letters) - 1 else nv + i
            if l > 0:
                edges.append((prev, l, nxt))
            else:
                edges.append((nxt, -l, prev))
            prev = nxt
        nv += max(0, len(letters) - 1)
    return StallingsGraph._from_raw(nv, edges, 0, rank)


def membership(graph: StallingsGraph, word: Word) -> bool:
    """True iff the word labels a closed path at the basepoint."""
    return graph.trace(graph.base, word.letters) == graph.base


def index(graph: StallingsGraph) -> int | None:
    """Finite index (= vertex count) iff every vertex carries all 2n labels."""
    for v in range(graph.nv):
        if len(graph._out[v]) < graph.rank or len(graph._inc[v]) < graph.rank:
            return None
    return graph.nv


def rank_of(graph: StallingsGraph) -> int:
    """First Betti number = free rank of the represented subgroup."""
    return len(graph.edges) - graph.nv + 1


def fiber_product(g1: StallingsGraph, g2: StallingsGraph) -> StallingsGraph:
    """Core graph of the intersection of the two subgroups."""
    if g1.rank != g2.rank:
        raise ValueError("rank mismatch in fiber product")
    start = (g1.base, g2.base)
    ids = {start: 0}
    queue = deque([start])
    edges = []
    while queue:
        state = queue.popleft()
        v1, v2 = state
        for l in range(1, g1.rank + 1):
            for sgn in (1, -1):
                w1 = g1.step(v1, sgn * l)
                w2 = g2.step(v2, sgn * l)
                if w1 is None or w2 is None:
                    continue
                nxt = (w1, w2)
                if nxt not in ids:
                    ids[nxt] = len(ids)
                    queue.append(nxt)
                if sgn > 0:
                    edges.append((ids[state], l, ids[nxt]))
                else:
                    edges.append((ids[nxt], l, ids[state]))
    return StallingsGraph._from_raw(len(ids), sorted(set(edges)), 0, g1.rank)


def spanning_tree_paths(graph: StallingsGraph) -> tuple[dict[int, tuple[int, ...]], list]:
    """BFS spanning tree from the basepoint.

    Returns (path_to, non_tree_edges): path_to[v] is the letter sequence of the
    tree path basepoint -> v; non_tree_edges lists the (u, label, v) edges
    outside the tree in canonical (sorted) order.
    """
    path_to = {graph.base: ()}
    tree_edges: set[tuple[int, int, int]] = set()
    queue = deque([graph.base])
    while queue:
        v = queue.popleft()
        for letter in graph.darts_at(v):
            w = graph.step(v, letter)
            if w not in path_to:
                path_to[w] = path_to[v] + (letter,)
                tree_edges.add((v, letter, w) if letter > 0 else (w, -letter, v))
                queue.append(w)
    non_tree = [e for e in graph.edges if e not in tree_edges]
    return path_to, non_tree


def basis_of(graph: StallingsGraph) -> list[Word]:
    """Free basis of the subgroup, one word per non-tree edge (deterministic)."""
    path_to, non_tree = spanning_tree_paths(graph)
    basis = []
    for u, l, v in non_tree:
        letters = path_to[u] + (l,) + tuple(-x for x in reversed(path_to[v]))
        basis.append(Word.make(letters, graph.rank))
    return basis


def is_basis(words, rank: int) -> bool:
    """True iff `words` is a free basis of the whole rank-n free group."""
    if len(words) != rank:
        return False
    return index(build_core(words, rank)) == 1


def conjugate(graph: StallingsGraph, g: Word) -> StallingsGraph:
    """Core graph of g H g⁻¹."""
    ginv = g.inverse()
    return build_core([g * h * ginv for h in basis_of(graph)], graph.rank)


def subgroup_elements(graph: StallingsGraph, max_len: int):
    """All subgroup elements of word length <= max_len, in canonical order."""
    return [w for w in enumerate_words(graph.rank, max_len) if membership(graph, w)]


# --------------------------------------------------------------------------
# finite-cover completion with excluded element
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HallWitness:
    """A finite cover certifying that H is a free factor of a finite-index
    subgroup F' = <h_basis> * <complement_basis> with the designated element
    excluded from F'.

    Fields:
      subgroup: the input core graph of H;
      cover: label-full folded graph (every vertex carries all 2n labels);
      embedding: vertex map realizing subgroup -> cover label-preservingly;
      h_basis: free basis of H read off the cover's spanning tree;
      complement_basis: basis of the complementary free factor K;
      excluded: the word kept outside F', or None.
    """

    subgroup: StallingsGraph
    cover: StallingsGraph
    embedding: dict[int, int]
    h_basis: tuple[Word, ...]
    complement_basis: tuple[Word, ...]
    excluded: Word | None = None

    @property
    def cover_index(self) -> int:
        return self.cover.nv

    def verify(self) -> dict[str, bool]:
        """Re-check every claim of the witness from scratch.

        Returns a dict of named booleans; `ok` is their conjunction.
        """
        n = self.cover.rank
        checks = {}
        checks["index_finite"] = index(self.cover) == self.cover.nv
        bound = 2 * (self.subgroup.nv + (len(self.excluded) if self.excluded else 0))
        checks["index_within_bound"] = self.cover.nv <= max(bound, 1)
        emb_ok = self.embedding.get(self.subgroup.base) == self.cover.base
        for u, l, v in self.subgroup.edges:
            eu, ev = self.embedding.get(u), self.embedding.get(v)
            if eu is None or ev is None or self.cover.step(eu, l) != ev:
                emb_ok = False
                break
        checks["subgroup_embeds"] = emb_ok
        checks["euler_rank_formula"] = len(self.h_basis) + len(self.complement_basis) == 1 + self.cover.nv * (n - 1)
        if self.excluded is not None:
            checks["excluded_stays_out"] = not membership(self.cover, self.excluded)
        checks["basis_rebuilds_cover"] = (
            build_core(list(self.h_basis) + list(self.complement_basis), n) == self.cover
        )
        checks["ok"] = all(checks.values())
        return checks


def hall_completion(graph: StallingsGraph, g: Word | None = None) -> HallWitness:
    """Complete the core graph of H to a finite cover; if g is given (g not in
    H), the completion provably excludes g.

    Strategy: first trace g from the basepoint, attaching fresh path edges
    wherever the trace leaves the graph — this keeps the graph folded and ends
    at a non-basepoint vertex, so *any* subsequent completion keeps g outside.
    Then make every label a permutation of the vertices by pairing the sorted
    missing-outgoing list with the sorted missing-incoming list per label.
    """
    n = graph.rank
    if g is not None and membership(graph, g):
        raise PreconditionError("excluded element already belongs to the subgroup")

    out = [dict(d) for d in graph._out]
    inc = [dict(d) for d in graph._inc]
    nv = graph.nv

    def add_edge(u: int, l: int, v: int) -> None:
        out[u][l] = v
        inc[v][l] = u

    extra_edges: list[tuple[int, int, int]] = []
    if g is not None:
        v = graph.base
        for letter in g.letters:
            nxt = out[v].get(letter) if letter > 0 else inc[v].get(-letter)
            if nxt is None:
                nxt = nv
                nv += 1
                out.append({})
                inc.append({})
                edge = (v, letter, nxt) if letter > 0 else (nxt, -letter, v)
                add_edge(*edge)
                extra_edges.append(edge)
            v = nxt
        if v == graph.base:
            raise AssertionError("g traced back to the basepoint despite g not in H")

    for l in range(1, n + 1):
        missing_out = sorted(v for v in range(nv) if l not in out[v])
        missing_in = sorted(v for v in range(nv) if l not in inc[v])
        for u, w in zip(missing_out, missing_in):
            add_edge(u, l, w)
            extra_edges.append((u, l, w))

    all_edges = sorted(
        {(u, l, v) for u in range(nv) for l, v in out[u].items()}
    )
    _, canon_edges, perm = folding.canonical_form(nv, all_edges, graph.base, n)
    cover = StallingsGraph(n, nv, canon_edges)
    original = {(perm[u], l, perm[v]) for u, l, v in graph.edges}
    embedding = {v: perm[v] for v in range(graph.nv)}

    # two-phase BFS spanning tree: phase 1 inside the image of H's core graph,
    # so the tree restricted to it is a spanning tree of that image and the
    # non-tree edges split cleanly into an H-basis and a complement basis.
    path_to: dict[int, tuple[int, ...]] = {cover.base: ()}
    tree: set[tuple[int, int, int]] = set()
    order: list[int] = [cover.base]
    queue = deque([cover.base])
    while queue:
        v = queue.popleft()
        for letter in cover.darts_at(v):
            edge = (v, letter, cover.step(v, letter)) if letter > 0 else (
                cover.step(v, letter), -letter, v)
            if edge not in original:
                continue
            w = cover.step(v, letter)
            if w not in path_to:
                path_to[w] = path_to[v] + (letter,)
                tree.add(edge)
                order.append(w)
                queue.append(w)
    queue = deque(order)
    while queue:
        v = queue.popleft()
        for letter in cover.darts_at(v):
            w = cover.step(v, letter)
            if w not in path_to:
                path_to[w] = path_to[v] + (letter,)
                tree.add((v, letter, w) if letter > 0 else (w, -letter, v))
                queue.append(w)

    h_basis: list[Word] = []
    complement: list[Word] = []
    for u, l, v in cover.edges:
        if (u, l, v) in tree:
            continue
        word = Word.make(path_to[u] + (l,) + tuple(-x for x in reversed(path_to[v])), n)
        (h_basis if (u, l, v) in original else complement).append(word)

    return HallWitness(
        subgroup=graph,
        cover=cover,
        embedding=embedding,
        h_basis=tuple(h_basis),
        complement_basis=tuple(complement),
        excluded=g,
    )
