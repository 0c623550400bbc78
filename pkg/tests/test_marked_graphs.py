"""Marked metric graphs: lengths, minimal subtrees, translate overlaps."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grouptrees.core import Scalar, Word, parse_word
from grouptrees.basis_change import invert_basis, substitute
from grouptrees.errors import (
    DegenerateSubgroupError,
    InvalidSystemError,
    MalformedPathError,
    NotABasisError,
)
from grouptrees.marked_graphs import (
    MarkedMetricGraph,
    edge_in_minimal_subtree,
    minimal_subtree,
    transverse_family_report,
    translate_intersection,
)
from grouptrees.stallings import build_core, index


def W(s, rank=2):
    return parse_word(s, rank)


def core(*gens, rank=2):
    return build_core([W(g, rank) for g in gens], rank)


def rose(*lengths, marking=("a", "b")):
    rank = len(lengths)
    return MarkedMetricGraph(
        rank, 1, [(0, 0, l) for l in lengths], (),
        {i: parse_word(m, rank) for i, m in enumerate(marking)})


def theta():
    return MarkedMetricGraph(
        2, 2,
        [(0, 1, Fraction(1, 2)), (0, 1, Fraction(1, 3)), (0, 1, Fraction(1, 5))],
        (0,), {1: W("a"), 2: W("b")})


letters = st.integers(min_value=-2, max_value=2).filter(lambda x: x != 0)
raw_words = st.lists(letters, max_size=8)


def mk_word(raw):
    w = Word.identity(2)
    for l in raw:
        w = w * Word((l,), 2)
    return w


words = raw_words.map(mk_word)


class TestInvertBasis:
    def test_standard_basis(self):
        assert [str(d) for d in invert_basis([W("a"), W("b")], 2)] == ["a", "b"]

    def test_shear(self):
        assert [str(d) for d in invert_basis([W("ab"), W("b")], 2)] == ["aB", "b"]
        assert [str(d) for d in invert_basis([W("a"), W("ab")], 2)] == ["a", "Ab"]

    def test_conjugated_basis(self):
        exprs = invert_basis([W("abA"), W("aabA")], 2)
        for i, expr in enumerate(exprs, start=1):
            assert substitute(expr, [W("abA"), W("aabA")]).letters == (i,)

    def test_wrong_count(self):
        with pytest.raises(NotABasisError):
            invert_basis([W("a")], 2)

    def test_identity_word_rejected(self):
        with pytest.raises(NotABasisError):
            invert_basis([W("a"), W("")], 2)

    def test_relation_rejected(self):
        with pytest.raises(NotABasisError):
            invert_basis([W("ab"), W("ab")], 2)

    def test_proper_subgroup_rejected(self):
        with pytest.raises(NotABasisError):
            invert_basis([W("aa"), W("b")], 2)
        with pytest.raises(NotABasisError):
            invert_basis([W("ab"), W("ba")], 2)
        with pytest.raises(NotABasisError):
            invert_basis([W("ab"), W("aB")], 2)

    @given(st.lists(st.tuples(st.sampled_from(["swap", "invert", "multiply"]),
                              st.integers(0, 1)), max_size=12))
    def test_nielsen_images_invert(self, moves):
        basis = [W("a"), W("b")]
        for move, i in moves:
            j = 1 - i
            if move == "swap":
                basis[0], basis[1] = basis[1], basis[0]
            elif move == "invert":
                basis[i] = basis[i].inverse()
            elif len(basis[i].letters) + len(basis[j].letters) <= 24:
                basis[i] = basis[i] * basis[j]
        exprs = invert_basis(basis, 2)
        for k, expr in enumerate(exprs, start=1):
            assert substitute(expr, basis).letters == (k,)


class TestValidation:
    def test_valence_one_rejected(self):
        with pytest.raises(InvalidSystemError, match="valence"):
            MarkedMetricGraph(1, 2, [(0, 0, 1), (0, 1, 1)], (1,), {0: W("a", 1)})

    def test_betti_mismatch(self):
        with pytest.raises(InvalidSystemError, match="Betti"):
            MarkedMetricGraph(2, 1, [(0, 0, 1)], (), {0: W("a")})

    def test_nonpositive_length(self):
        with pytest.raises(InvalidSystemError, match="positive"):
            rose(1, 0)

    def test_tree_with_cycle(self):
        with pytest.raises(InvalidSystemError, match="cycle"):
            MarkedMetricGraph(
                3, 3,
                [(0, 1, 1), (0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 2, 1)],
                (0, 1),
                {2: W("a", 3), 3: W("b", 3), 4: W("c", 3)})

    def test_marking_must_be_basis(self):
        with pytest.raises(NotABasisError):
            rose(1, 1, marking=("aa", "b"))

    def test_disconnected(self):
        with pytest.raises(InvalidSystemError, match="connected"):
            MarkedMetricGraph(2, 2, [(0, 0, 1), (1, 1, 1), (1, 1, 1)], (),
                              {0: W("a"), 1: W("b")})


class TestTranslationLength:
    def test_unit_rose(self):
        g = rose(1, 1)
        assert g.translation_length(W("a")) == Scalar.of(1)
        assert g.translation_length(W("abA")) == Scalar.of(1)
        assert g.translation_length(W("ab")) == Scalar.of(2)
        assert g.translation_length(W("")) == Scalar.of(0)

    def test_weighted_rose(self):
        g = rose(1, 2)
        assert g.translation_length(W("ab")) == Scalar.of(3)
        assert g.translation_length(W("abAB")) == Scalar.of(6)

    def test_theta(self):
        g = theta()
        assert g.volume() == Scalar.of(Fraction(31, 30))
        assert g.bounded_backtracking_constant() == g.volume()
        assert g.translation_length(W("a")) == Scalar.of(Fraction(5, 6))
        assert g.translation_length(W("b")) == Scalar.of(Fraction(7, 10))
        assert g.translation_length(W("aB")) == Scalar.of(Fraction(8, 15))

    def test_marking_matters(self):
        g = rose(1, 1, marking=("ab", "b"))
        assert g.translation_length(W("a")) == Scalar.of(2)
        assert g.translation_length(W("b")) == Scalar.of(1)
        assert g.translation_length(W("ab")) == Scalar.of(1)

    @given(words, words)
    def test_conjugacy_invariance(self, w, g):
        graph = theta()
        assert graph.translation_length(g * w * g.inverse()) == graph.translation_length(w)

    @given(words)
    def test_inverse_invariance(self, w):
        graph = theta()
        assert graph.translation_length(w.inverse()) == graph.translation_length(w)

    @given(words, st.integers(min_value=1, max_value=4))
    def test_power_scaling(self, w, k):
        graph = theta()
        assert graph.translation_length(w ** k) == graph.translation_length(w) * Scalar.of(k)


class TestOmegaEpsilon:
    def test_short_loop_rose(self):
        g = rose(Fraction(1, 10), 1)
        assert [str(w) for w in g.omega_epsilon(Fraction(1, 2), 4)] == \
            ["a", "aa", "aaa", "aaaa"]

    def test_strictness(self):
        g = rose(Fraction(1, 10), 1)
        assert g.omega_epsilon(Fraction(1, 10), 4) == []

    def test_everything_short(self):
        g = rose(Fraction(1, 10), Fraction(1, 10))
        from grouptrees.core import enumerate_words
        assert g.omega_epsilon(Fraction(1, 2), 3) == list(enumerate_words(2, 3, "conjugacy"))


class TestMinimalSubtree:
    def test_cyclic_in_rose(self):
        cov = minimal_subtree(rose(1, 1), core("a"))
        summary = cov.core_summary()
        assert summary["vertices"] == 1
        assert summary["volume"] == "1"
        assert not cov.is_covering

    def test_conjugate_cyclic_misses_basepoint(self):
        cov = minimal_subtree(rose(1, 1), core("baB"))
        assert cov.p_base not in cov.core_vertices
        assert len(cov.core_vertices) == 1
        assert cov.core_volume == Scalar.of(1)

    def test_whole_group_covers(self):
        cov = minimal_subtree(rose(1, 1), core("a", "b"))
        assert cov.is_covering and cov.degree == 1

    def test_index_two_covers(self):
        cov = minimal_subtree(rose(1, 1), core("aa", "b", "abA"))
        assert cov.is_covering and cov.degree == 2
        assert cov.core_volume == Scalar.of(4)

    def test_infinite_index_does_not_cover(self):
        cov = minimal_subtree(rose(1, 1), core("a", "bab"))
        assert not cov.is_covering and cov.degree is None

    def test_trivial_subgroup_degenerate(self):
        with pytest.raises(DegenerateSubgroupError):
            minimal_subtree(rose(1, 1), core("aA"))

    def test_circle_volume_is_translation_length(self):
        graph = theta()
        for word in ("a", "b", "aB", "ab", "abAB"):
            cov = minimal_subtree(graph, core(word))
            assert cov.core_volume == graph.translation_length(W(word))

    @given(words.filter(lambda w: len(w.letters) > 0))
    def test_cyclic_core_volume_matches_axis(self, w):
        graph = rose(Fraction(1, 2), Fraction(1, 3))
        cov = minimal_subtree(graph, build_core([w], 2))
        assert cov.core_volume == graph.translation_length(w)

    def test_covering_tracks_finite_index(self):
        for gens in (("a", "b"), ("aa", "b", "abA"), ("a",), ("ab", "ba"),
                     ("aa", "ab"), ("a", "bb", "bab")):
            sub = core(*gens)
            cov = minimal_subtree(rose(1, 1), sub)
            assert cov.is_covering == (index(sub) is not None)
            if cov.is_covering:
                assert cov.degree == index(sub)


class TestEdgeMembership:
    def test_rose_cyclic(self):
        sub = core("a")
        g = rose(1, 1)
        assert edge_in_minimal_subtree(g, sub, W(""), 1)
        assert not edge_in_minimal_subtree(g, sub, W(""), 2)
        assert not edge_in_minimal_subtree(g, sub, W("b"), 1)
        assert edge_in_minimal_subtree(g, sub, W("a"), 1)

    def test_conjugate_sheet(self):
        assert edge_in_minimal_subtree(rose(1, 1), core("baB"), W("b"), 1)
        assert not edge_in_minimal_subtree(rose(1, 1), core("baB"), W(""), 1)

    def test_malformed_dart(self):
        with pytest.raises(MalformedPathError):
            edge_in_minimal_subtree(theta(), core("a"), W(""), -1)

    def test_theta_tree_edge(self):
        # the axis of a crosses the tree edge (id 0) and non-tree edge a (id 1)
        sub = core("a")
        g = theta()
        assert edge_in_minimal_subtree(g, sub, W(""), 1)
        assert edge_in_minimal_subtree(g, sub, W(""), 2)
        assert not edge_in_minimal_subtree(g, sub, W(""), 3)


class TestTranslateIntersection:
    def test_disjoint_axes(self):
        out = translate_intersection(rose(1, 1), core("a"), W("b"), 4)
        assert out["outcome"] == "disjoint-within-radius"

    def test_nondegenerate_overlap(self):
        out = translate_intersection(rose(1, 1), core("a", "baB"), W("b"), 4)
        assert out["outcome"] == "nondegenerate-intersection"
        assert out["witness_common"]["sheet"] == "b"
        assert out["witness_difference"]["side"] == "subtree"

    def test_translate_stabilizes_line(self):
        out = translate_intersection(rose(1, 1), core("aa"), W("a"), 4)
        assert out["outcome"] == "coincide-within-radius"

    def test_membership_short_circuit(self):
        out = translate_intersection(rose(1, 1), core("aa", "b", "abA"), W("aa"), 3)
        assert out["outcome"] == "whole-tree-coincidence"
        assert "subgroup" in out["reason"]

    def test_finite_index_short_circuit(self):
        out = translate_intersection(rose(1, 1), core("aa", "b", "abA"), W("a"), 3)
        assert out["outcome"] == "whole-tree-coincidence"
        assert "finite-index" in out["reason"]

    def test_single_point(self):
        # the axis of ab visits sheets (ab)^k and (ab)^k a; its a-translate
        # visits a(ab)^k and a(ab)^k a, so exactly the vertex at sheet "a"
        # is shared, and no edge is.
        out = translate_intersection(rose(1, 1), core("ab"), W("a"), 4)
        assert out["outcome"] == "single-point-within-radius"
        assert out["witness_vertex"]["sheet"] == "a"


class TestTransverseFamily:
    def test_cyclic_is_transverse(self):
        rep = transverse_family_report(rose(1, 1), core("a"), 3, 5)
        assert rep["verdict"] == "transverse-up-to-budget"
        assert rep["translates_tested"] > 0
        assert all(row["outcome"] != "nondegenerate-intersection" for row in rep["rows"])

    def test_violation_found(self):
        rep = transverse_family_report(rose(1, 1), core("a", "baB"), 2, 4)
        assert rep["verdict"] == "violations-found"
        assert rep["violations"]

    def test_whole_group_degenerate(self):
        rep = transverse_family_report(rose(1, 1), core("a", "b"), 2, 3)
        assert rep["verdict"] == "degenerate-family-whole-tree"
        assert "whole group" in rep["message"]

    def test_finite_index_degenerate(self):
        rep = transverse_family_report(rose(1, 1), core("aa", "b", "abA"), 2, 3)
        assert rep["verdict"] == "degenerate-family-whole-tree"
        assert "finite-index" in rep["message"]
