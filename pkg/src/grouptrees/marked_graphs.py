"""Marked metric graphs and the trees they encode.

A marked metric graph is a finite connected metric graph of first Betti
number n, with no valence-one vertices, together with a marking: a choice of
spanning tree and, for each non-tree edge, a word in the rank-n free group,
such that the induced assignment (non-tree edge loop -> word) identifies the
fundamental group of the graph with the free group.  Its universal cover is a
simplicial metric tree with a free cocompact action, and everything here
(translation lengths, minimal subtrees of subgroups, translate overlaps) is
computed exactly on that tree.

Conventions
-----------
* Edges are numbered 0..E-1; a *dart* is a signed id +-(eid+1): positive runs
  the edge from its first endpoint to its second, negative the reverse.
* `word_to_loop` sends a group word to an edge-dart loop at the basepoint
  whose marking image is that word, so tree coordinates can be labeled by
  (reduced word, vertex) pairs.
* Subtrees of the universal cover are handled through the fundamental-domain
  graph of the subgroup's cover plus an exact walker into its hanging trees.
"""

from __future__ import annotations

from .core import Scalar, Word, ZERO, enumerate_words, reduce_letters
from .errors import (
    DegenerateSubgroupError,
    InvalidSystemError,
    MalformedPathError,
)
from .basis_change import invert_basis
from . import folding
from .stallings import StallingsGraph, basis_of, index, membership, rank_of, subgroup_elements


def _inv_darts(darts: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-d for d in reversed(darts))


class MarkedMetricGraph:
    """A minimal metric graph with a marking identifying pi_1 with F_n."""

    __slots__ = (
        "rank", "nv", "edges", "tree", "marking", "base",
        "_non_tree", "_letter_exprs", "_letter_loops", "_darts_at", "_out_eids",
        "_tree_adj",
    )

    def __init__(self, rank, nv, edges, tree, marking, base=0):
        if not isinstance(rank, int) or rank < 1:
            raise InvalidSystemError("rank must be a positive integer")
        if not isinstance(nv, int) or nv < 1:
            raise InvalidSystemError("need at least one vertex")
        edge_list = []
        for u, v, length in edges:
            if not (0 <= u < nv and 0 <= v < nv):
                raise InvalidSystemError("edge endpoint out of range")
            length = Scalar.of(length)
            if length.sign() <= 0:
                raise InvalidSystemError("edge lengths must be positive")
            edge_list.append((u, v, length))
        self.edges = tuple(edge_list)
        ne = len(self.edges)
        if ne - nv + 1 != rank:
            raise InvalidSystemError(
                f"graph has first Betti number {ne - nv + 1}, marking needs {rank}")
        if not (0 <= base < nv):
            raise InvalidSystemError("basepoint out of range")

        adjacency = {v: [] for v in range(nv)}
        valence = [0] * nv
        for eid, (u, v, _) in enumerate(self.edges):
            adjacency[u].append(v)
            adjacency[v].append(u)
            valence[u] += 1
            valence[v] += 1
        seen = {0}
        stack = [0]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != nv:
            raise InvalidSystemError("graph must be connected")
        bad = [v for v in range(nv) if valence[v] <= 1]
        if bad:
            raise InvalidSystemError(
                f"vertex {bad[0]} has valence {valence[bad[0]]}; "
                "a minimal graph has no valence-one vertices")

        tree = frozenset(tree)
        if not all(isinstance(t, int) and 0 <= t < ne for t in tree):
            raise InvalidSystemError("spanning tree refers to unknown edges")
        if len(tree) != nv - 1:
            raise InvalidSystemError("spanning tree must have nv-1 edges")
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in sorted(tree):
            u, v, _ = self.edges[t]
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InvalidSystemError("spanning tree contains a cycle")
            parent[ru] = rv

        non_tree = tuple(sorted(set(range(ne)) - tree))
        marking = dict(marking)
        if set(marking) != set(non_tree):
            raise InvalidSystemError(
                "marking must assign a word to each non-tree edge, and only those")
        words = []
        for eid in non_tree:
            w = marking[eid]
            if not isinstance(w, Word):
                raise InvalidSystemError("marking values must be Word instances")
            if w.rank != rank:
                raise InvalidSystemError("marking word has wrong rank")
            words.append(w)

        self.rank = rank
        self.nv = nv
        self.tree = tree
        self.marking = marking
        self.base = base
        self._non_tree = non_tree
        # NotABasisError propagates if the marking words do not form a basis.
        self._letter_exprs = invert_basis(words, rank)

        self._tree_adj = {v: [] for v in range(nv)}
        for eid in sorted(tree):
            u, v, _ = self.edges[eid]
            self._tree_adj[u].append((v, eid + 1))
            self._tree_adj[v].append((u, -(eid + 1)))

        self._darts_at = {v: [] for v in range(nv)}
        self._out_eids = {v: [] for v in range(nv)}
        for eid, (u, v, _) in enumerate(self.edges):
            self._darts_at[u].append(eid + 1)
            self._darts_at[v].append(-(eid + 1))
            self._out_eids[u].append(eid)
        for v in range(nv):
            self._darts_at[v].sort(key=lambda d: (abs(d), d < 0))

        nt_loops = {}
        for eid in non_tree:
            u, v, _ = self.edges[eid]
            nt_loops[eid] = tuple(reduce_letters(
                self.tree_path(base, u) + (eid + 1,) + self.tree_path(v, base)))
        loops = []
        for expr in self._letter_exprs:
            darts: tuple[int, ...] = ()
            for s in expr.letters:
                piece = nt_loops[non_tree[abs(s) - 1]]
                darts = tuple(reduce_letters(darts + (piece if s > 0 else _inv_darts(piece))))
            loops.append(darts)
        self._letter_loops = tuple(loops)

    # -- darts ---------------------------------------------------------------

    def dart_source(self, d: int) -> int:
        u, v, _ = self.edges[abs(d) - 1]
        return u if d > 0 else v

    def dart_target(self, d: int) -> int:
        u, v, _ = self.edges[abs(d) - 1]
        return v if d > 0 else u

    def darts_at(self, v: int) -> list[int]:
        return self._darts_at[v]

    def dart_length(self, d: int) -> Scalar:
        return self.edges[abs(d) - 1][2]

    def dart_marking_letters(self, d: int) -> tuple[int, ...]:
        """Marking letters contributed by crossing a dart (empty for tree darts)."""
        eid = abs(d) - 1
        w = self.marking.get(eid)
        if w is None:
            return ()
        return w.letters if d > 0 else tuple(-x for x in reversed(w.letters))

    def tree_path(self, u: int, v: int) -> tuple[int, ...]:
        """Darts of the unique reduced path from u to v inside the spanning tree."""
        if u == v:
            return ()
        prev = {u: None}
        queue = [u]
        while queue:
            nxt = []
            for x in queue:
                for y, dart in self._tree_adj[x]:
                    if y not in prev:
                        prev[y] = (x, dart)
                        nxt.append(y)
            if v in prev:
                break
            queue = nxt
        path = []
        x = v
        while prev[x] is not None:
            x, dart = prev[x]
            path.append(dart)
        return tuple(reversed(path))

    # -- loops and lengths ----------------------------------------------------

    def letter_loop(self, letter: int) -> tuple[int, ...]:
        loop = self._letter_loops[abs(letter) - 1]
        return loop if letter > 0 else _inv_darts(loop)

    def word_to_loop(self, w: Word) -> tuple[int, ...]:
        """Dart loop at the basepoint whose marking image is w."""
        darts: tuple[int, ...] = ()
        for letter in w.letters:
            darts = tuple(reduce_letters(darts + self.letter_loop(letter)))
        return darts

    def translation_length(self, w: Word) -> Scalar:
        """Exact translation length of w on the universal cover (0 if trivial)."""
        loop = list(self.word_to_loop(w))
        while len(loop) >= 2 and loop[0] == -loop[-1]:
            loop = loop[1:-1]
        total = ZERO
        for d in loop:
            total = total + self.dart_length(d)
        return total

    def volume(self) -> Scalar:
        total = ZERO
        for _, _, length in self.edges:
            total = total + length
        return total

    def bounded_backtracking_constant(self) -> Scalar:
        """The volume; it bounds backtracking of broken geodesics in the cover."""
        return self.volume()

    def omega_epsilon(self, epsilon, max_len: int) -> list[Word]:
        """Conjugacy classes up to max_len with translation length strictly below epsilon."""
        epsilon = Scalar.of(epsilon)
        return [w for w in enumerate_words(self.rank, max_len, "conjugacy")
                if (self.translation_length(w) - epsilon).sign() < 0]


# -- minimal subtrees of subgroups --------------------------------------------


class CoverCore:
    """The subgroup's cover of a marked graph, split into core and hanging trees.

    `p_*` fields describe the folded fundamental-domain graph P (a compact
    subgraph of the subgroup's cover containing its core); `core_*` fields the
    core itself, which is the quotient of the subgroup's minimal subtree.  The
    walker (`initial_state` / `step`) tracks a vertex of the full cover as a
    P-vertex plus a stack of darts hanging off it, and reports for every edge
    crossed whether that edge lies in the minimal subtree.
    """

    __slots__ = (
        "graph", "subgroup", "p_nv", "p_edges", "p_base", "_out", "_in",
        "core_edges", "core_vertices", "vertex_image", "is_covering", "degree",
        "core_volume",
    )

    def __init__(self, graph: MarkedMetricGraph, subgroup: StallingsGraph):
        if subgroup.rank != graph.rank:
            raise InvalidSystemError("subgroup rank does not match the marking rank")
        if rank_of(subgroup) == 0:
            raise DegenerateSubgroupError(
                "the trivial subgroup fixes no minimal subtree")
        self.graph = graph
        self.subgroup = subgroup

        petals = [graph.word_to_loop(b) for b in basis_of(subgroup)]
        edges = []
        nv = 1
        for darts in petals:
            chain = [0] + [nv + t for t in range(len(darts) - 1)] + [0]
            nv += len(darts) - 1
            for t, d in enumerate(darts):
                if d > 0:
                    edges.append((chain[t], d, chain[t + 1]))
                else:
                    edges.append((chain[t + 1], -d, chain[t]))
        p_nv, p_edges, p_base, _ = folding.fold(nv, edges, 0)
        self.p_nv = p_nv
        self.p_edges = tuple(p_edges)
        self.p_base = p_base

        self._out = {}
        self._in = {}
        for u, l, v in self.p_edges:
            assert (u, l) not in self._out and (v, l) not in self._in
            self._out[(u, l)] = v
            self._in[(v, l)] = u

        image: dict[int, int] = {}
        for u, l, v in self.p_edges:
            gu, gv, _ = graph.edges[l - 1]
            for p, g in ((u, gu), (v, gv)):
                assert image.setdefault(p, g) == g
        assert image[p_base] == graph.base
        assert len(image) == p_nv
        self.vertex_image = image

        alive, core_edge_list = folding.trim(p_nv, list(self.p_edges), protect=None)
        core_edges = frozenset(core_edge_list)
        assert core_edges, "a nontrivial subgroup always has a nonempty core"
        core_vertices = frozenset(
            {u for u, _, _ in core_edges} | {v for _, _, v in core_edges})
        self.core_edges = core_edges
        self.core_vertices = core_vertices
        assert len(core_edges) - len(core_vertices) + 1 == rank_of(subgroup)

        covering = True
        for p in core_vertices:
            have = set()
            for u, l, v in core_edges:
                if u == p:
                    have.add(l)
                if v == p:
                    have.add(-l)
            if have != set(graph.darts_at(image[p])):
                covering = False
                break
        self.is_covering = covering
        if covering:
            assert len(core_vertices) % graph.nv == 0
            self.degree = len(core_vertices) // graph.nv
        else:
            self.degree = None

        total = ZERO
        for _, l, _ in core_edges:
            total = total + graph.edges[l - 1][2]
        self.core_volume = total

    # -- walking the full cover ------------------------------------------------

    def initial_state(self):
        return (self.p_base, ())

    def state_vertex(self, state) -> int:
        p, stack = state
        return self.graph.dart_target(stack[-1]) if stack else self.vertex_image[p]

    def step(self, state, dart: int):
        """Cross one dart; returns (new_state, crossed_edge_in_minimal_subtree)."""
        if self.graph.dart_source(dart) != self.state_vertex(state):
            raise MalformedPathError(
                f"dart {dart} does not start at the current vertex")
        p, stack = state
        if stack:
            if stack[-1] == -dart:
                return (p, stack[:-1]), False
            return (p, stack + (dart,)), False
        label = abs(dart)
        if dart > 0:
            target = self._out.get((p, label))
        else:
            target = self._in.get((p, label))
        if target is None:
            return (p, (dart,)), False
        if dart > 0:
            edge = (p, label, target)
        else:
            edge = (target, label, p)
        return (target, ()), edge in self.core_edges

    def walk(self, state, darts):
        for d in darts:
            state, _ = self.step(state, d)
        return state

    def vertex_on_subtree(self, state) -> bool:
        p, stack = state
        return not stack and p in self.core_vertices

    def core_summary(self) -> dict:
        return {
            "vertices": len(self.core_vertices),
            "edges": sorted(self.core_edges),
            "volume": str(self.core_volume),
            "is_covering": self.is_covering,
            "degree": self.degree,
        }


def minimal_subtree(graph: MarkedMetricGraph, subgroup: StallingsGraph) -> CoverCore:
    """Exact model of the subgroup's minimal subtree in the universal cover."""
    return CoverCore(graph, subgroup)


def edge_in_minimal_subtree(graph: MarkedMetricGraph, subgroup: StallingsGraph,
                            base_path: Word, dart: int) -> bool:
    """Does the dart crossed after walking base_path's loop lie in the minimal subtree?

    The walk starts at the basepoint lift, follows the loop representing
    base_path, then crosses `dart`, which must start at the basepoint's image
    (MalformedPathError otherwise).
    """
    cover = minimal_subtree(graph, subgroup)
    state = cover.walk(cover.initial_state(), graph.word_to_loop(base_path))
    _, flag = cover.step(state, dart)
    return flag


# -- overlaps of subtree translates --------------------------------------------
#
# Universal-cover vertices are labeled (reduced word, graph vertex): the word
# is the marking image of any path from the basepoint lift, so tree darts do
# not change it and crossing a non-tree dart appends that edge's marking word.
# The deck transformation of a group element g sends (u, v) to (g*u, v).


def _grow_ball(cover: CoverCore, seed_letters, seed_state, radius: int) -> dict:
    """Walker states for every tree vertex within `radius` edges of the seed."""
    graph = cover.graph
    states = {(seed_letters, cover.state_vertex(seed_state)): seed_state}
    frontier = list(states)
    for _ in range(radius):
        nxt = []
        for u, v in frontier:
            state = states[(u, v)]
            for d in graph.darts_at(v):
                key = (tuple(reduce_letters(u + graph.dart_marking_letters(d))),
                       graph.dart_target(d))
                new_state, _ = cover.step(state, d)
                old = states.get(key)
                if old is None:
                    states[key] = new_state
                    nxt.append(key)
                else:
                    assert old == new_state
        frontier = nxt
    return states


def _edge_report(graph: MarkedMetricGraph, u, v, eid) -> dict:
    return {
        "sheet": str(Word(u, graph.rank)),
        "vertex": v,
        "edge": eid,
        "length": str(graph.edges[eid][2]),
    }


def _translate_intersection_prepared(cover: CoverCore, g: Word, radius: int,
                                     base_ball: dict) -> dict:
    graph = cover.graph
    subgroup = cover.subgroup
    report = {"translate": str(g), "radius": radius}
    if membership(subgroup, g):
        report["outcome"] = "whole-tree-coincidence"
        report["reason"] = "the translating element lies in the subgroup"
        return report
    if cover.is_covering:
        report["outcome"] = "whole-tree-coincidence"
        report["reason"] = "finite-index subgroup: the minimal subtree is the whole tree"
        return report

    init = cover.initial_state()
    g_inv = g.inverse()
    state_g = cover.walk(init, graph.word_to_loop(g))
    state_gi = cover.walk(init, graph.word_to_loop(g_inv))

    ball_g = _grow_ball(cover, g.letters, state_g, radius)
    ball_gi = _grow_ball(cover, g_inv.letters, state_gi, radius)
    states = dict(base_ball)
    for extra in (ball_g, ball_gi):
        for key, st in extra.items():
            assert states.setdefault(key, st) == st
    scan = sorted(set(base_ball) | set(ball_g),
                  key=lambda k: (Word(k[0], graph.rank).sort_key(), k[1]))

    def shifted(u):
        return tuple(reduce_letters(g_inv.letters + u))

    common, only_sub, only_translate = [], [], []
    common_vertex = None
    for u, v in scan:
        state = states[(u, v)]
        # the g-shift of any scanned vertex lies in one of the three balls
        shifted_state = states[(shifted(u), v)]
        if common_vertex is None:
            if cover.vertex_on_subtree(state) and cover.vertex_on_subtree(shifted_state):
                common_vertex = {"sheet": str(Word(u, graph.rank)), "vertex": v}
        for eid in graph._out_eids[v]:
            in_sub = cover.step(state, eid + 1)[1]
            in_translate = cover.step(shifted_state, eid + 1)[1]
            if in_sub and in_translate:
                common.append((u, v, eid))
            elif in_sub:
                only_sub.append((u, v, eid))
            elif in_translate:
                only_translate.append((u, v, eid))

    report["common_edge_count"] = len(common)
    if common and (only_sub or only_translate):
        report["outcome"] = "nondegenerate-intersection"
        report["witness_common"] = _edge_report(graph, *common[0])
        diff = only_sub[0] if only_sub else only_translate[0]
        report["witness_difference"] = dict(
            _edge_report(graph, *diff),
            side="subtree" if only_sub else "translate")
    elif common:
        report["outcome"] = "coincide-within-radius"
        report["witness_common"] = _edge_report(graph, *common[0])
    elif common_vertex is not None:
        report["outcome"] = "single-point-within-radius"
        report["witness_vertex"] = common_vertex
    else:
        report["outcome"] = "disjoint-within-radius"
    return report


def translate_intersection(graph: MarkedMetricGraph, subgroup: StallingsGraph,
                           g: Word, radius: int) -> dict:
    """Compare the subgroup's minimal subtree with its g-translate near the basepoint.

    Outcomes: "whole-tree-coincidence" and "nondegenerate-intersection" are
    exact certificates; the "-within-radius" outcomes only describe the ball
    that was examined.
    """
    cover = minimal_subtree(graph, subgroup)
    base_ball = _grow_ball(cover, (), cover.initial_state(), radius)
    return _translate_intersection_prepared(cover, g, radius, base_ball)


def transverse_family_report(graph: MarkedMetricGraph, subgroup: StallingsGraph,
                             max_len: int, radius: int) -> dict:
    """Search translates gT_H (|g| <= max_len, g outside H) for nondegenerate overlaps.

    Distinct translates of the minimal subtree form a transverse family when
    no two share an edge; each nondegenerate overlap found is a certified
    violation.  Translates are deduplicated up to the double cosets HgH seen
    within the word budget.
    """
    cover = minimal_subtree(graph, subgroup)
    report = {"max_len": max_len, "radius": radius}
    if cover.is_covering:
        report["verdict"] = "degenerate-family-whole-tree"
        if index(subgroup) == 1:
            report["message"] = ("the subgroup is the whole group, so the family "
                                 "is the single tree itself")
        else:
            report["message"] = ("finite-index subgroup: every translate is the "
                                 "whole tree, so the family is degenerate")
        report["rows"] = []
        report["violations"] = []
        return report

    ball = [w.letters for w in subgroup_elements(subgroup, max_len)]
    if () not in ball:
        ball.append(())
    ball = ball[:64]

    base_ball = _grow_ball(cover, (), cover.initial_state(), radius)
    rows = []
    violations = []
    for w in enumerate_words(graph.rank, max_len):
        if membership(subgroup, w):
            continue
        key = w.sort_key()
        minimal = True
        for h1 in ball:
            for h2 in ball:
                r = tuple(reduce_letters(h1 + w.letters + h2))
                if not r or Word(r, graph.rank).sort_key() < key:
                    minimal = False
                    break
            if not minimal:
                break
        if not minimal:
            continue
        result = _translate_intersection_prepared(cover, w, radius, base_ball)
        rows.append({"word": str(w), "outcome": result["outcome"]})
        if result["outcome"] == "nondegenerate-intersection":
            violations.append(result)

    report["translates_tested"] = len(rows)
    report["rows"] = rows
    report["violations"] = violations
    if violations:
        report["verdict"] = "violations-found"
        report["message"] = (f"{len(violations)} translate(s) share an edge with the "
                             "minimal subtree: the translate family is not transverse")
    else:
        report["verdict"] = "transverse-up-to-budget"
        report["message"] = ("no translate within the word and radius budget shares "
                             "an edge with the minimal subtree")
    return report
