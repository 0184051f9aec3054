#include "test_oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qmap;

namespace {

Circuit example() { return Circuit(4, {{0, 1, 2}, {2, 3, 3}, {3, 0, 1}}); }

Circuit random_circuit(std::mt19937_64& rng, int n, int gates) {
    Circuit c(n);
    for (int k = 0; k < gates; ++k) {
        auto p = static_cast<Qubit>(rng() % static_cast<unsigned>(n));
        auto q = static_cast<Qubit>(rng() % static_cast<unsigned>(n - 1));
        if (q >= p) ++q;
        c.add_gate({p, q, static_cast<Time>(4 + rng() % 4)});
    }
    return c;
}

NodeState state(std::vector<Time> depth, std::vector<Node> assignment, std::vector<std::size_t> progress,
                std::size_t swaps = 0) {
    return {std::move(depth), std::move(assignment), std::move(progress), swaps};
}

}  // namespace

TEST(Solve, WorkedExample) {
    auto c = example();
    auto g = linear_topology(4);
    auto r = solve(c, g, SolverConfig::depth());
    ASSERT_TRUE(r.schedule);
    EXPECT_EQ(r.status, SolveStatus::Optimal);
    EXPECT_TRUE(r.proven_optimal);
    EXPECT_EQ(r.objective_value, Rational(4));
    auto v = validate(*r.schedule, c, g);
    ASSERT_TRUE(v.ok()) << v.violation->message;
    EXPECT_EQ(v.metrics.depth, 4);
    EXPECT_EQ(v.metrics.swaps, 0u);
    EXPECT_LE(r.root_bound, r.objective_value);

    auto sw = solve(c, g, SolverConfig::swaps());
    EXPECT_EQ(sw.objective_value, Rational(0));
}

TEST(Solve, SingleGateAndEmpty) {
    for (auto g : {linear_topology(2), y_topology(5), grid_topology(2, 3)}) {
        auto r = solve(Circuit(2, {{0, 1, 4}}), g, SolverConfig::depth());
        EXPECT_EQ(r.objective_value, Rational(4));
        ASSERT_EQ(r.schedule->ops.size(), 1u);
        EXPECT_EQ(r.schedule->ops[0].start, 0);
    }
    auto empty = solve(Circuit(3), linear_topology(3), SolverConfig::depth());
    EXPECT_EQ(empty.status, SolveStatus::Optimal);
    EXPECT_EQ(empty.objective_value, Rational(0));
    EXPECT_TRUE(empty.schedule->ops.empty());
}

TEST(Solve, RejectsBadInput) {
    EXPECT_THROW(solve(Circuit(5, {{0, 4, 1}}), linear_topology(4), SolverConfig::depth()), std::invalid_argument);
    SolverConfig zero;
    zero.w_depth = 0;
    EXPECT_THROW(solve(example(), linear_topology(4), zero), std::invalid_argument);
    SolverConfig negative;
    negative.w_swaps = -1;
    EXPECT_THROW(solve(example(), linear_topology(4), negative), std::invalid_argument);
    SolverConfig beam;
    beam.beam_width = 0;
    EXPECT_THROW(solve(example(), linear_topology(4), beam), std::invalid_argument);
}

TEST(Expand, RootOfExample) {
    auto c = example();
    auto g = linear_topology(4);
    SearchTree tree(c, g, SolverConfig::depth());
    auto root = tree.make_root();
    auto children = tree.expand(root);
    EXPECT_EQ(children.size(), 12u);  // 2 gates x 3 edges x 2 orientations
    for (auto id : children) EXPECT_NE(tree.info(id).gate, kSwap);
}

TEST(Expand, FullyOccupiedLineHasThreeSwapChildren) {
    Circuit c(4, {{0, 1, 1}, {2, 3, 1}, {0, 3, 1}});
    auto g = linear_topology(4);
    SearchTree tree(c, g, SolverConfig::depth());
    // all placed, both first gates done, q1 and q4 far apart: only SWAPs apply
    auto id = tree.add_node(state({1, 1, 1, 1}, {0, 1, 2, 3}, {1, 1, 1, 1}), {});
    auto children = tree.expand(id);
    ASSERT_EQ(children.size(), 3u);
    for (auto child : children) EXPECT_EQ(tree.info(child).gate, kSwap);
}

TEST(Expand, ChildTimingAndSwapEffect) {
    Circuit c(2, {{0, 1, 4}});
    auto g = linear_topology(3);
    SearchTree tree(c, g, SolverConfig::depth());
    auto id = tree.add_node(state({3, 7, 0}, {0, 2, -1}, {0, 0}), {});
    auto swap = tree.make_child(id, kSwap, {0, 1});
    EXPECT_EQ(tree.info(swap).start, 7);
    auto s = tree.state(swap);
    EXPECT_EQ(std::vector<Time>(s.depth.begin(), s.depth.end()), (std::vector<Time>{22, 22, 0}));
    EXPECT_EQ(std::vector<Node>(s.assignment.begin(), s.assignment.end()), (std::vector<Node>{1, 2}));
    EXPECT_EQ(s.swaps, 1u);
}

TEST(Expand, LayeredModeHoldsBackLaterLayers) {
    // g1 (q1,q2) layer 0, g2 (q3,q4) layer 0, g3 (q1,q2) layer 1
    Circuit c(4, {{0, 1, 1}, {2, 3, 1}, {0, 1, 1}});
    auto g = linear_topology(4);
    SolverConfig layered = SolverConfig::depth();
    layered.layered = true;
    SearchTree tree(c, g, layered);
    // g1 done, g2 not: g3 is minimal but must wait
    auto id = tree.add_node(state({1, 1, 0, 0}, {0, 1, -1, -1}, {1, 1, 0, 0}), {});
    EXPECT_EQ(tree.schedulable_gates(id), (std::vector<GateIndex>{1}));
    for (auto child : tree.expand(id)) {
        EXPECT_NE(tree.info(child).gate, 2u);
    }
    SearchTree free_tree(c, g, SolverConfig::depth());
    auto id2 = free_tree.add_node(state({1, 1, 0, 0}, {0, 1, -1, -1}, {1, 1, 0, 0}), {});
    EXPECT_EQ(free_tree.schedulable_gates(id2), (std::vector<GateIndex>{1, 2}));
}

TEST(TryInsert, DominanceCases) {
    Circuit c(2, {{0, 1, 4}, {0, 1, 4}});
    auto g = linear_topology(4);
    SearchTree tree(c, g, SolverConfig::depth());
    auto a = tree.add_node(state({5, 5, 0, 0}, {0, 1}, {1, 1}), {});
    EXPECT_TRUE(tree.try_insert(a));
    auto dup = tree.add_node(state({5, 5, 0, 0}, {0, 1}, {1, 1}), {});
    EXPECT_FALSE(tree.try_insert(dup));

    auto better = tree.add_node(state({4, 5, 0, 0}, {0, 1}, {1, 1}), {});
    EXPECT_TRUE(tree.try_insert(better));
    EXPECT_FALSE(tree.info(a).in_front);
    EXPECT_FALSE(tree.info(a).open);
    EXPECT_EQ(tree.front_size(better), 1u);

    auto x = tree.add_node(state({4, 6, 0, 0}, {1, 2}, {1, 1}), {});
    auto y = tree.add_node(state({5, 5, 0, 0}, {1, 2}, {1, 1}), {});
    EXPECT_TRUE(tree.try_insert(x));
    EXPECT_TRUE(tree.try_insert(y));
    EXPECT_EQ(tree.front_size(x), 2u);
    EXPECT_TRUE(tree.fronts_are_antichains());
}

TEST(TryInsert, SwapCountOnlyMattersWhenWeighted) {
    Circuit c(2, {{0, 1, 4}, {0, 1, 4}});
    auto g = linear_topology(4);
    SearchTree depth_tree(c, g, SolverConfig::depth());
    auto a = depth_tree.add_node(state({5, 5, 0, 0}, {0, 1}, {1, 1}, 0), {});
    auto b = depth_tree.add_node(state({5, 5, 0, 0}, {0, 1}, {1, 1}, 3), {});
    EXPECT_TRUE(depth_tree.try_insert(b));
    EXPECT_FALSE(depth_tree.try_insert(a));

    SearchTree swap_tree(c, g, SolverConfig::swaps());
    auto a2 = swap_tree.add_node(state({5, 5, 0, 0}, {0, 1}, {1, 1}, 0), {});
    auto b2 = swap_tree.add_node(state({4, 4, 0, 0}, {0, 1}, {1, 1}, 3), {});
    EXPECT_TRUE(swap_tree.try_insert(a2));
    EXPECT_TRUE(swap_tree.try_insert(b2));
    EXPECT_EQ(swap_tree.front_size(a2), 2u);
}

TEST(Bound, WeightedCombination) {
    Circuit c(2, {{0, 1, 4}});
    auto g = linear_topology(4);
    SolverConfig cfg;
    cfg.w_depth = 1;
    cfg.w_swaps = 10;
    SearchTree tree(c, g, cfg);
    auto id = tree.add_node(state({0, 0, 0, 0}, {0, 1}, {0, 0}, 2), {});
    EXPECT_EQ(tree.depth_bound(id), 4);
    EXPECT_EQ(tree.swap_bound(id), 2);
    EXPECT_EQ(tree.bound_value(id), Rational(24));

    SolverConfig frac;
    frac.w_depth = Rational(1, 2);
    frac.w_swaps = Rational(1, 3);
    SearchTree t2(c, g, frac);
    auto id2 = t2.add_node(state({0, 0, 0, 0}, {0, 1}, {0, 0}, 2), {});
    EXPECT_EQ(t2.bound_value(id2), Rational(8, 3));

    SearchTree only_depth(c, g, SolverConfig::depth());
    EXPECT_EQ(only_depth.bound_value(only_depth.add_node(state({0, 0, 0, 0}, {0, 1}, {0, 0}, 2), {})), Rational(4));
    SearchTree only_swaps(c, g, SolverConfig::swaps());
    EXPECT_EQ(only_swaps.bound_value(only_swaps.add_node(state({0, 0, 0, 0}, {0, 1}, {0, 0}, 2), {})), Rational(2));
}

TEST(SolveProperty, CombinedObjectiveIsConsistent) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 15; ++trial) {
        auto c = random_circuit(rng, 4, 1 + static_cast<int>(rng() % 6));
        auto g = trial % 2 ? linear_topology(4) : y_topology(4);
        SolverConfig combined;
        combined.w_depth = 1;
        combined.w_swaps = 10;
        auto r = solve(c, g, combined);
        ASSERT_EQ(r.status, SolveStatus::Optimal);
        auto m = metrics(*r.schedule);
        EXPECT_EQ(r.objective_value, Rational(m.depth + 10 * static_cast<Time>(m.swaps)));
        for (const auto& other : {SolverConfig::depth(), SolverConfig::swaps()}) {
            auto o = solve(c, g, other);
            auto om = metrics(*o.schedule);
            EXPECT_LE(r.objective_value, Rational(om.depth + 10 * static_cast<Time>(om.swaps)));
        }
    }
}

TEST(SolveProperty, DeterministicAndSchedulesValidate) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_circuit(rng, 4, 2 + static_cast<int>(rng() % 6));
        auto g = trial % 2 ? linear_topology(4) : y_topology(5);
        for (bool layered : {false, true}) {
            auto cfg = trial % 3 ? SolverConfig::depth() : SolverConfig::swaps();
            cfg.layered = layered;
            auto a = solve(c, g, cfg);
            auto b = solve(c, g, cfg);
            ASSERT_TRUE(a.schedule);
            EXPECT_EQ(write_schedule(*a.schedule), write_schedule(*b.schedule));
            EXPECT_EQ(a.stats.nodes_expanded, b.stats.nodes_expanded);
            EXPECT_EQ(a.stats.nodes_inserted, b.stats.nodes_inserted);
            auto v = validate(*a.schedule, c, g);
            ASSERT_TRUE(v.ok()) << v.violation->message;
            if (cfg.w_swaps == 0) {
                EXPECT_EQ(Rational(v.metrics.depth), a.objective_value);
            }
            // The solver's times are already as early as possible.
            std::vector<Time> free_at(static_cast<std::size_t>(g.num_nodes()), 0);
            for (const auto& op : a.schedule->ops) {
                auto& fv = free_at[static_cast<std::size_t>(op.edge.v)];
                auto& fw = free_at[static_cast<std::size_t>(op.edge.w)];
                EXPECT_EQ(op.start, std::max(fv, fw));
                fv = fw = op.start + op.duration;
            }
            // final assignment injective
            std::set<Node> used;
            for (Node v2 : v.final_assignment)
                if (v2 >= 0) {
                    EXPECT_TRUE(used.insert(v2).second);
                }
        }
    }
}

TEST(SolveProperty, LayeredNeverBeatsNonLayered) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_circuit(rng, 4, 3 + static_cast<int>(rng() % 5));
        auto g = trial % 2 ? linear_topology(4) : y_topology(4);
        for (auto cfg : {SolverConfig::depth(), SolverConfig::swaps()}) {
            auto free_r = solve(c, g, cfg);
            cfg.layered = true;
            auto layered_r = solve(c, g, cfg);
            EXPECT_LE(free_r.objective_value, layered_r.objective_value);
            EXPECT_LE(free_r.root_bound, free_r.objective_value);
            EXPECT_LE(layered_r.root_bound, layered_r.objective_value);
        }
    }
}

TEST(SolveProperty, PruningDoesNotChangeOptimum) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 12; ++trial) {
        auto c = random_circuit(rng, 3 + static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 3));
        auto g = linear_topology(4);
        for (auto cfg : {SolverConfig::depth(), SolverConfig::swaps()}) {
            for (bool layered : {false, true}) {
                cfg.layered = layered;
                auto pruned = solve(c, g, cfg);
                cfg.pareto_pruning = false;
                auto plain = solve(c, g, cfg);
                cfg.pareto_pruning = true;
                ASSERT_EQ(plain.status, SolveStatus::Optimal);
                EXPECT_EQ(pruned.objective_value, plain.objective_value);
            }
        }
    }
}

TEST(SolveProperty, FrontsStayAntichains) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto c = random_circuit(rng, 4, 4 + static_cast<int>(rng() % 3));
        auto g = y_topology(4);
        SearchTree tree(c, g, trial % 2 ? SolverConfig::depth() : SolverConfig::swaps());
        auto r = tree.solve();
        EXPECT_EQ(r.status, SolveStatus::Optimal);
        EXPECT_TRUE(tree.fronts_are_antichains());
    }
}

TEST(Beam, FeasibleAndNoBetterThanExact) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 15; ++trial) {
        auto c = random_circuit(rng, 4, 2 + static_cast<int>(rng() % 5));
        auto g = trial % 2 ? linear_topology(4) : y_topology(4);
        auto exact = solve(c, g, SolverConfig::depth());
        for (std::size_t width : {1u, 8u, 64u}) {
            auto cfg = SolverConfig::depth();
            cfg.beam_width = width;
            auto r = solve(c, g, cfg);
            ASSERT_TRUE(r.schedule);
            EXPECT_FALSE(r.proven_optimal);
            EXPECT_EQ(r.status, SolveStatus::Incumbent);
            EXPECT_TRUE(validate(*r.schedule, c, g).ok());
            EXPECT_GE(r.objective_value, exact.objective_value);
        }
    }
}

TEST(Limits, NodeLimitReturnsUnprovenResult) {
    std::mt19937_64 rng(15);
    auto c = random_circuit(rng, 5, 10);
    auto cfg = SolverConfig::depth();
    cfg.node_limit = 3;
    auto r = solve(c, linear_topology(5), cfg);
    EXPECT_TRUE(r.stats.limit_hit);
    EXPECT_FALSE(r.proven_optimal);
    EXPECT_NE(r.status, SolveStatus::Optimal);
    if (r.schedule) {
        EXPECT_TRUE(validate(*r.schedule, c, linear_topology(5)).ok());
    }
}

TEST(Events, IncumbentAndFinishedAreReported) {
    std::vector<SearchEventKind> kinds;
    auto cfg = SolverConfig::depth();
    cfg.on_event = [&](const SearchEvent& e) { kinds.push_back(e.kind); };
    solve(example(), linear_topology(4), cfg);
    ASSERT_FALSE(kinds.empty());
    EXPECT_EQ(kinds.back(), SearchEventKind::Finished);
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), SearchEventKind::Incumbent), kinds.end());
}
