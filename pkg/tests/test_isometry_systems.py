"""Systems of partial isometries: orbits, families, balance, covers, dynamics."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grouptrees.core import Scalar, parse_word
from grouptrees.corpus import (
    ALPHA,
    balanced_corpus,
    dependent_corpus,
    golden_grow_seed,
    golden_system,
    grow_corpus,
    index_two_cover_graph,
    rotation_pair,
    worked_single_map,
)
from grouptrees.errors import (
    InvalidSystemError,
    MissingLabelsError,
    OutOfSupportError,
)
from grouptrees.intervals import Interval, MultiInterval
from grouptrees.isometry_systems import (
    PartialIsometry,
    SoISystem,
    ae_support_check,
    balance_report,
    discreteness_report,
    domain_sum,
    finite_orbit_families,
    grow_forest,
    independence_check,
    indecomposability_search,
    orbit,
    singular_points,
    subgroup_constrained_orbit,
    subgroup_saturation,
    suspension,
    total_measure,
)
from grouptrees.stallings import build_core

S = Scalar.of


def iv(lo, hi) -> Interval:
    return Interval(S(lo), S(hi))


def system(support, maps, labels=None) -> SoISystem:
    gens = [PartialIsometry(iv(lo, hi), orient, S(off))
            for (lo, hi, orient, off) in maps]
    return SoISystem(MultiInterval([iv(a, b) for a, b in support]), gens,
                     labels=labels)


def W(text, rank=2):
    return parse_word(text, rank)


class TestPartialIsometry:
    def test_range_is_shifted_domain(self):
        g = PartialIsometry(iv(0, "3/4"), 1, S("1/4"))
        assert g.ran == iv("1/4", 1)

    def test_reversing_range(self):
        g = PartialIsometry(iv(0, "1/4"), -1, S(1))
        assert g.ran == iv("3/4", 1)

    def test_apply_outside_domain_is_none(self):
        g = PartialIsometry(iv(0, "1/2"), 1, S("1/4"))
        assert g.apply(S("3/4")) is None

    def test_bad_orientation(self):
        with pytest.raises(InvalidSystemError):
            PartialIsometry(iv(0, 1), 2, S(0))

    @given(st.fractions(min_value=0, max_value=1).map(
        lambda f: f.limit_denominator(40)),
        st.sampled_from([1, -1]),
        st.fractions(min_value=-2, max_value=2).map(
            lambda f: f.limit_denominator(40)))
    def test_inverse_undoes(self, x, orient, off):
        g = PartialIsometry(iv(0, 1), orient, S(off))
        y = g.apply(S(x))
        assert y is not None
        assert g.inverse().apply(y) == S(x)


class TestSystemValidation:
    def test_domain_must_stay_inside_support(self):
        with pytest.raises(InvalidSystemError):
            system([(0, 1)], [(0, 2, 1, 0)])

    def test_range_must_stay_inside_support(self):
        with pytest.raises(InvalidSystemError):
            system([(0, 1)], [(0, "1/2", 1, 1)])

    def test_needs_generators(self):
        with pytest.raises(InvalidSystemError):
            SoISystem(MultiInterval([iv(0, 1)]), [])

    def test_labels_must_match_generator_count(self):
        with pytest.raises(InvalidSystemError):
            system([(0, 1)], [(0, "1/2", 1, "1/2")], labels=("a", "b"))

    def test_labels_must_be_distinct_letters(self):
        with pytest.raises(InvalidSystemError):
            system([(0, 1)], [(0, "1/2", 1, "1/2"), ("1/2", 1, 1, "-1/2")],
                   labels=("a", "a"))
        with pytest.raises(InvalidSystemError):
            system([(0, 1)], [(0, "1/2", 1, "1/2")], labels=("A",))

    def test_measures(self):
        g = golden_system()
        assert total_measure(g) == S(1)
        assert domain_sum(g) == S(1)
        assert total_measure(worked_single_map()) == S(1)
        assert domain_sum(worked_single_map()) == S("3/4")


class TestOrbit:
    def test_worked_orbit_of_eighth(self):
        status, pts = orbit(worked_single_map(), S("1/8"), 50)
        assert status == "closed"
        assert [str(p) for p in pts] == ["1/8", "3/8", "5/8", "7/8"]

    def test_out_of_support(self):
        with pytest.raises(OutOfSupportError):
            orbit(worked_single_map(), S(2), 10)

    def test_golden_orbit_truncates(self):
        status, pts = orbit(golden_system(), S("1/2"), 200)
        assert status == "truncated"
        assert len(pts) > 200
        assert len(set(pts)) == len(pts)

    def test_closed_orbit_is_generator_invariant(self):
        sy = worked_single_map()
        status, pts = orbit(sy, S("1/8"), 50)
        assert status == "closed"
        seen = set(pts)
        for p in pts:
            for l in sy.signed_letters():
                q = sy.apply_letter(l, p)
                assert q is None or q in seen

    @given(st.fractions(min_value=0, max_value=1).map(
        lambda f: f.limit_denominator(30)))
    def test_rational_sweep_orbits_close_and_partition(self, x):
        sy = worked_single_map()
        status, pts = orbit(sy, S(x), 200)
        assert status == "closed"
        # orbits partition: the orbit of any member is the same set
        again = orbit(sy, pts[0], 200)[1]
        assert again == pts


class TestSingularPointsAndFamilies:
    def test_worked_singular_points(self):
        assert [str(p) for p in singular_points(worked_single_map())] == \
            ["0", "1/4", "3/4", "1"]

    def test_golden_singular_points(self):
        pts = singular_points(golden_system())
        assert pts == (S(0), ALPHA, S(1) - ALPHA, S(1))

    def test_worked_families(self):
        fam = finite_orbit_families(worked_single_map(), 100)
        assert fam["status"] == "complete" and fam["singular_complete"]
        assert len(fam["families"]) == 1
        only = fam["families"][0]
        assert only["measure"] == S("1/4")
        assert only["cardinality"] == 4
        assert only["interval"] == iv(0, "1/4")
        assert fam["e"] == S("1/4")

    def test_golden_families_truncate_at_singular_stage(self):
        fam = finite_orbit_families(golden_system(), 200)
        assert fam["status"] == "partial"
        assert not fam["singular_complete"]
        assert fam["e"] is None and fam["e_lower_bound"] == S(0)

    def test_two_fifths_has_two_families(self):
        sy = system([(0, 1)], [(0, "3/5", 1, "2/5")])
        fam = finite_orbit_families(sy, 100)
        assert fam["status"] == "complete"
        cards = sorted(f["cardinality"] for f in fam["families"])
        assert cards == [2, 3]
        assert all(f["measure"] == S("1/5") for f in fam["families"])
        assert fam["e"] == S("2/5")


class TestIndependence:
    def test_rotation_pair_violation_at_length_two(self):
        res = independence_check(rotation_pair(), 2)
        assert res["status"] == "violation"
        assert res["word"] == "ab"
        assert res["word_length"] == 2
        assert res["arc"] == iv("1/2", 1)

    def test_golden_ok_to_length_eight(self):
        res = independence_check(golden_system(), 8)
        assert res["status"] == "ok-up-to-budget"

    def test_full_flip_squares_to_identity(self):
        sy = system([(0, 1)], [(0, 1, -1, 1)])
        res = independence_check(sy, 2)
        assert res["status"] == "violation"
        assert res["word"] == "aa"
        assert res["arc"] == iv(0, 1)

    def test_reversing_half_is_independent(self):
        # the flip restricted to [0, 1/2] cannot square on a nondegenerate arc
        res = independence_check(system([(0, 1)], [(0, "1/2", -1, 1)]), 6)
        assert res["status"] == "ok-up-to-budget"


class TestBalanceReport:
    @pytest.mark.parametrize("name,sy,e", balanced_corpus(),
                             ids=[n for n, _, _ in balanced_corpus()])
    def test_balanced_corpus_identity(self, name, sy, e):
        rep = balance_report(sy, 8, 500)
        assert rep["verdict"] == "identity-verified"
        assert rep["e"] == e
        assert rep["residual"].is_zero()
        assert rep["m"] == rep["d"] + rep["e"]

    @pytest.mark.parametrize("name,sy", dependent_corpus(),
                             ids=[n for n, _ in dependent_corpus()])
    def test_dependent_corpus_certified(self, name, sy):
        rep = balance_report(sy, 4, 200)
        assert rep["verdict"] == "dependent-certified"
        assert (domain_sum(sy) - total_measure(sy)).sign() > 0

    def test_golden_inconclusive_with_zero_excess(self):
        rep = balance_report(golden_system(), 6, 200)
        assert rep["verdict"] == "inconclusive-with-data"
        assert rep["excess"].is_zero()
        assert rep["residual"] is None

    def test_rotation_pair_dependent_by_violation(self):
        rep = balance_report(rotation_pair(), 4, 100)
        assert rep["verdict"] == "dependent-certified"
        assert rep["independence"]["status"] == "violation"


class TestSuspension:
    def test_band_complex_shape(self):
        sus = suspension(golden_system())
        assert len(sus.bands) == 2
        assert sus.euler_count == -1
        assert sus.bands[0]["label"] == "a"
        assert sus.bands[0]["width"] == S(1) - ALPHA
        assert sus.singular_points == singular_points(golden_system())

    def test_leaf_trace_is_orbit(self):
        sus = suspension(worked_single_map())
        assert sus.leaf_trace(S("1/8"), 50) == orbit(worked_single_map(),
                                                     S("1/8"), 50)

    def test_census_counts_distinct_leaves(self):
        sus = suspension(worked_single_map())
        census = sus.singular_leaf_census(100)
        assert census["closed_leaves"] == 1  # 0,1/4,1/2,3/4,1 share one leaf
        assert census["truncated_leaves"] == 0

    def test_census_golden_truncates(self):
        census = suspension(golden_system()).singular_leaf_census(120)
        assert census["truncated_leaves"] >= 1


class TestGrowForest:
    def test_frozen_first_stage(self):
        stages = grow_forest(worked_single_map(),
                             MultiInterval([iv(0, "1/8")]), 3)
        assert stages[0]["support"] == MultiInterval([iv(0, "1/8")])
        assert stages[1]["support"] == MultiInterval([iv(0, "1/8"),
                                                      iv("1/4", "3/8")])
        assert stages[0]["residual"] == S("1/8")

    def test_stage_count(self):
        stages = grow_forest(worked_single_map(),
                             MultiInterval([iv(0, "1/8")]), 6)
        assert [st["step"] for st in stages] == list(range(7))

    def test_out_of_support(self):
        with pytest.raises(OutOfSupportError):
            grow_forest(worked_single_map(), MultiInterval([iv(0, 2)]), 2)

    @pytest.mark.parametrize("name,sy,seed", grow_corpus(),
                             ids=[n for n, _, _ in grow_corpus()])
    def test_corpus_residuals_non_increasing(self, name, sy, seed):
        stages = grow_forest(sy, seed, 8)
        rs = [st["residual"] for st in stages]
        assert all((b - a).sign() <= 0 for a, b in zip(rs, rs[1:]))

    def test_golden_seed_strictly_decreases_four_steps(self):
        stages = grow_forest(golden_system(), golden_grow_seed(), 8)
        rs = [st["residual"] for st in stages]
        for a, b in zip(rs[:4], rs[1:5]):
            assert (b - a).sign() < 0
        assert rs[4].is_zero() and rs[8].is_zero()
        assert rs[0] == S("3/20")
        assert rs[1] == S("7/2-3/2*sqrt5")
        assert rs[2] == S("-21/10+sqrt5")
        assert rs[3] == S("-111/20+5/2*sqrt5")


class TestAeSupportCover:
    def test_golden_cover_witness(self):
        res = ae_support_check(golden_system(), MultiInterval([iv(0, "1/5")]),
                               iv(0, 1), Fraction(1, 100), 12)
        assert res["status"] == "covered"
        assert res["uncovered_measure"].is_zero()
        assert res["words"][0] == ""  # the seed itself is always used first
        assert len(res["words"]) >= 4

    def test_small_budget_exhausts(self):
        res = ae_support_check(golden_system(), MultiInterval([iv(0, "1/5")]),
                               iv(0, 1), Fraction(1, 100), 1)
        assert res["status"] == "budget-exhausted"
        assert res["uncovered_measure"].sign() > 0

    def test_delta_must_be_positive(self):
        with pytest.raises(InvalidSystemError):
            ae_support_check(golden_system(), MultiInterval([iv(0, "1/5")]),
                             iv(0, 1), 0, 3)

    def test_target_must_sit_in_support(self):
        with pytest.raises(OutOfSupportError):
            ae_support_check(golden_system(), MultiInterval([iv(0, "1/5")]),
                             iv(0, 2), Fraction(1, 10), 3)


class TestIndecomposabilityChains:
    def test_golden_chain_found_and_verified(self):
        res = indecomposability_search(golden_system(), iv(0, "1/10"),
                                       iv("1/2", "3/5"), 8, 10)
        assert res["status"] == "chain-found"
        assert res["r"] <= 8
        ivs = [link["interval"] for link in res["chain"]]
        covered = MultiInterval(ivs)
        assert covered.contains_interval(iv("1/2", "3/5"))
        for a, b in zip(ivs, ivs[1:]):
            overlap = a.intersect(b)
            assert overlap is not None and not overlap.is_point

    def test_trivial_chain_when_piece_contains_target(self):
        res = indecomposability_search(worked_single_map(), iv(0, "1/2"),
                                       iv("1/8", "1/4"), 4, 4)
        assert res["status"] == "chain-found"
        assert res["r"] == 1
        assert res["chain"][0]["word"] == ""

    def test_two_component_obstruction_exhausts(self):
        # no word ever moves mass across the gap between the two components
        sy = SoISystem(MultiInterval([iv(0, 1), iv(2, 3)]),
                       [PartialIsometry(iv(0, "1/2"), 1, S("1/4"))])
        res = indecomposability_search(sy, iv(0, "1/4"), iv(2, "5/2"), 6, 6)
        assert res["status"] == "exhausted"

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(InvalidSystemError):
            indecomposability_search(golden_system(), iv(0, 0),
                                     iv("1/2", "3/5"), 4, 4)


class TestSubgroupConstrainedDynamics:
    def test_needs_labels(self):
        sy = worked_single_map()  # built without labels
        with pytest.raises(MissingLabelsError):
            subgroup_constrained_orbit(sy, build_core([W("a")], 2), S(0), 50)

    def test_golden_cyclic_a_orbit_frozen(self):
        graph = build_core([W("a")], 2)
        status, pts = subgroup_constrained_orbit(golden_system(), graph,
                                                 S(0), 100)
        assert status == "closed"
        assert pts == (S(0), ALPHA, ALPHA + ALPHA)

    def test_full_group_orbit_truncates(self):
        graph = build_core([W("a"), W("b")], 2)
        status, pts = subgroup_constrained_orbit(golden_system(), graph,
                                                 S(0), 200)
        assert status == "truncated"

    def test_constrained_points_are_orbit_points(self):
        graph = build_core([W("a")], 2)
        _, pts = subgroup_constrained_orbit(golden_system(), graph, S(0), 100)
        _, full = orbit(golden_system(), S(0), 400)
        assert set(pts) <= set(full)

    def test_saturation_of_small_piece_under_cyclic_a(self):
        graph = build_core([W("a")], 2)
        res = subgroup_saturation(golden_system(), graph, iv(0, "1/10"), 6, 10)
        assert res["saturated"]
        assert res["support"] == MultiInterval([iv(0, "1/10")])
        assert res["translates_added"] == []

    def test_saturation_grows_when_translates_meet(self):
        graph = build_core([W("a")], 2)
        res = subgroup_saturation(golden_system(), graph, iv(0, "1/2"), 6, 10)
        assert res["support"].measure.sign() > 0
        assert (res["support"].measure - S("1/2")).sign() > 0
        assert res["translates_added"]


class TestDiscretenessReport:
    def test_whole_group_suggests_dense(self):
        rep = discreteness_report(golden_system(),
                                  build_core([W("a"), W("b")], 2),
                                  [S(0)], 400)
        assert rep["verdict"] == "suggests-dense"
        assert rep["heuristic"] is True

    def test_cyclic_a_suggests_discrete_with_exact_gap(self):
        rep = discreteness_report(golden_system(), build_core([W("a")], 2),
                                  [S(0)], 400)
        assert rep["verdict"] == "suggests-discrete"
        assert rep["min_gap"] == ALPHA

    def test_index_two_suggests_dense(self):
        rep = discreteness_report(golden_system(), index_two_cover_graph(),
                                  [S(0)], 400)
        assert rep["verdict"] == "suggests-dense"

    def test_growth_table_budgets(self):
        rep = discreteness_report(golden_system(), build_core([W("a")], 2),
                                  [S(0)], 400)
        assert [g["budget"] for g in rep["growth"]] == [100, 200, 400]
