import pytest

from gkcover import (
    build_dag,
    greedy_antichain_cover,
    greedy_k_antichains,
    greedy_k_chains,
    greedy_weighted_chain_cover,
    knorm_collection,
    max_antichain_in_subset,
    max_coverage_path,
    minimum_path_cover,
    solve_alpha,
    solve_beta,
)
from gkcover.flowcore import min_flow
from gkcover.greedy import (
    UncoveredSet,
    build_subset_network,
    cover_paths,
    path_cover_flow,
)

from conftest import FIG_MPC


class TestMaxCoveragePath:
    def test_longest_path_with_tie_breaks(self, fig):
        # endpoints 7 and 8 tie at score 3; smaller id wins, then the
        # predecessor tie 0-vs-1 also resolves to the smaller id.
        p = max_coverage_path(fig, set(range(9)))
        assert p.vertices == (0, 4, 7)

    def test_scores_count_only_uncovered(self, fig):
        p = max_coverage_path(fig, {1, 6})
        assert p.vertices == (1, 6)

    def test_prefers_uncovered_endpoint(self, fig):
        # with 7 covered, endpoint 8 is preferred at equal score
        p = max_coverage_path(fig, set(range(9)) - {7})
        assert p.vertices[-1] == 8

    def test_empty_graph(self):
        p = max_coverage_path(build_dag(0, []), set())
        assert p.vertices == ()


class TestGreedyChains:
    def test_fig_rounds(self, fig):
        fam, trace = greedy_k_chains(fig, 2)
        assert [c.vertices for c in fam.members] == [(0, 4, 7), (1, 6)]
        assert trace.gains() == [3, 2]
        assert trace.stop_reason == "k reached"

    def test_runs_to_exhaustion(self, fig):
        fam, trace = greedy_k_chains(fig, 9)
        assert fam.coverage() == 9
        assert trace.stop_reason == "U empty"
        assert sum(trace.gains()) == 9

    def test_gains_monotone(self, fig):
        _, trace = greedy_k_chains(fig, 5)
        gains = [g for g in trace.gains() if g > 0]
        assert gains == sorted(gains, reverse=True)

    def test_chain_members_disjoint_and_certified(self, fig):
        fam, _ = greedy_k_chains(fig, 4)
        assert fam.disjoint
        seen = set()
        for c in fam.members:
            assert not (set(c.vertices) & seen)
            seen.update(c.vertices)


class TestGreedyWeightedChainCover:
    def test_stops_when_gain_at_threshold(self, fig):
        collection, partition, trace = greedy_weighted_chain_cover(fig, 2)
        assert [p.vertices for p in collection.members] == [(0, 4, 7)]
        assert trace.stop_reason == "gain <= threshold"
        # collection norm: 6 uncovered + 2 * 1 member = 8
        assert knorm_collection(collection.members, fig.n, 2) == 8
        assert partition.coverage() == fig.n

    def test_k1_takes_paths_while_gain_exceeds_one(self, fig):
        collection, partition, trace = greedy_weighted_chain_cover(fig, 1)
        assert all(g > 1 for g in trace.gains())
        assert partition.coverage() == fig.n


class TestSubsetNetwork:
    def test_min_flow_value_is_max_antichain(self, fig):
        subset = set(range(fig.n))
        sub = build_subset_network(fig, subset)
        f0 = path_cover_flow(sub, cover_paths(fig, subset))
        result = min_flow(sub.net, f0)
        assert result.flow.value(sub.net) == 5  # the width
        ac = max_antichain_in_subset(fig, subset, result.flow)
        assert sorted(ac.vertices) == [2, 3, 4, 5, 6]

    def test_restricted_subset(self, fig):
        subset = {0, 1, 7, 8}
        sub = build_subset_network(fig, subset)
        f0 = path_cover_flow(sub, cover_paths(fig, subset))
        result = min_flow(sub.net, f0)
        ac = max_antichain_in_subset(fig, subset, result.flow)
        assert sorted(ac.vertices) == [7, 8]  # sink-side maximum antichain

    def test_gadget_lower_bounds_follow_subset(self, fig):
        sub = build_subset_network(fig, {3, 4})
        for v in range(fig.n):
            expected = 1 if v in (3, 4) else 0
            assert sub.net.arcs[sub.gadget(v)].lower == expected


class TestMinimumPathCover:
    def test_fig_value(self, fig):
        assert minimum_path_cover(fig)[0] == FIG_MPC

    def test_single_chain(self):
        dag = build_dag(4, [(0, 1), (1, 2), (2, 3)])
        assert minimum_path_cover(dag)[0] == 1

    def test_antichain(self):
        assert minimum_path_cover(build_dag(4, []))[0] == 4

    def test_empty(self):
        assert minimum_path_cover(build_dag(0, []))[0] == 0


class TestGreedyAntichains:
    def test_fig_rounds(self, fig):
        fam, trace = greedy_k_antichains(fig, 2)
        assert [sorted(a.vertices) for a in fam.members] == [[2, 3, 4, 5, 6], [7, 8]]
        assert trace.gains() == [5, 2]
        assert fam.coverage() == 7

    def test_flow_values_match_gains(self, fig):
        _, trace = greedy_k_antichains(fig, 3)
        for r in trace.rounds:
            if r.member:
                assert r.flow_value == r.gain

    def test_exhaustion_pads_empty_rounds(self):
        dag = build_dag(2, [])
        fam, trace = greedy_k_antichains(dag, 4)
        assert fam.coverage() == 2
        assert trace.exhausted_early
        assert len(trace.rounds) == 4
        assert trace.stop_reason == "U empty"

    def test_round1_equals_width(self, fig):
        fam, _ = greedy_k_antichains(fig, 1)
        assert len(fam.members[0]) == solve_alpha(fig, 1).alpha

    def test_members_disjoint_antichains(self, fig):
        fam, _ = greedy_k_antichains(fig, 3)
        assert fam.disjoint


class TestGreedyAntichainCover:
    def test_fig_threshold_one(self, fig):
        taken, partition, trace = greedy_antichain_cover(fig, 1)
        assert trace.gains() == [5, 2, 2]
        assert partition.coverage() == fig.n
        assert len(partition) == 3

    def test_high_threshold_yields_singletons(self, fig):
        taken, partition, trace = greedy_antichain_cover(fig, 9)
        assert len(taken) == 0
        assert len(partition) == fig.n
        assert trace.stop_reason == "gain <= threshold"

    def test_cover_value_vs_optimal(self, fig):
        # greedy partition 1-norm is an upper bound on beta_1
        _, partition, _ = greedy_antichain_cover(fig, 1)
        assert len(partition) >= solve_beta(fig, 1).beta


class TestUncoveredSet:
    def test_operations(self):
        u = UncoveredSet.full(3)
        assert 2 in u and len(u) == 3
        u.remove_all([0, 2])
        assert u.vertices == {1}


def test_greedy_matches_optimal_on_small_random_dags(budget):
    # mini-fuzz: internal invariants (warm-start accounting, extraction
    # size checks) must hold across many shapes
    from gkcover import random_dag
    for trial in range(40):
        dag = random_dag(7, trial, seed=11)
        for k in (1, 2, 3):
            fam, _ = greedy_k_antichains(dag, k)
            assert fam.coverage() <= solve_alpha(dag, k).alpha
            cfam, _ = greedy_k_chains(dag, k)
            assert cfam.coverage() <= solve_beta(dag, k).beta
