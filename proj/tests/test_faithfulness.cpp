#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "localind/faithfulness.hpp"
#include "localind/separation.hpp"
#include "oracles.hpp"

using namespace localind;

namespace {

ExplicitModel everything(std::size_t n) {
    std::vector<IndependenceTriple> all;
    for_each_nontrivial_triple(n, false, [&](const IndependenceTriple& t) { all.push_back(t); });
    return ExplicitModel(n, std::move(all), true);
}

// Everything except self-independences, which no graph with self-loops separates.
ExplicitModel everything_but_self(std::size_t n) {
    std::vector<IndependenceTriple> all;
    for_each_nontrivial_triple(n, false, [&](const IndependenceTriple& t) {
        if (((t.a - t.c) & t.b).empty()) all.push_back(t);
    });
    return ExplicitModel(n, std::move(all), true);
}

ExplicitModel random_submodel(const ExplicitModel& model, Rng& rng) {
    std::bernoulli_distribution keep(0.5);
    std::vector<IndependenceTriple> kept;
    for (const auto& t : model.triples()) {
        if (keep(rng)) kept.push_back(t);
    }
    return close_under_decomposition(ExplicitModel(model.num_nodes(), std::move(kept)));
}

} // namespace

TEST_SUITE("faithfulness") {
    TEST_CASE("graphical models are transitively closed") {
        Rng rng(1);
        for (int i = 0; i < 30; ++i) {
            const std::size_t n = 2 + i % 3;
            const auto d = oracle::random_graph(n, rng, 0.35);
            const GraphOracleModel model(d);
            for (const NodeSet c : subsets_by_size(NodeSet::full(n))) CHECK(check_transitivity(model, d, c).empty());
            CHECK(is_transitively_closed(model, d));
        }
    }

    TEST_CASE("everything independent violates D0 on every edge") {
        const auto all = everything(2);
        const DirectedMixedGraph d(2, {{0, 1}});
        const auto report = check_transitivity(all, d, {});
        bool found = false;
        for (const auto& r : report) {
            if (r.condition == Condition::D0 && r.alpha == 0 && r.beta == 1) found = true;
        }
        CHECK(found);
        CHECK_FALSE(is_transitively_closed(all, d));
        CHECK_FALSE(is_faithful(all, d));
    }

    TEST_CASE("transitive closure is inherited by submodels") {
        Rng rng(2);
        int exercised = 0;
        for (int i = 0; i < 150; ++i) {
            const auto big = oracle::random_closed_model(3, rng);
            const auto d = oracle::random_graph(3, rng, 0.4);
            if (!is_transitively_closed(big, d)) continue;
            ++exercised;
            CHECK(is_transitively_closed(random_submodel(big, rng), d));
        }
        CHECK(exercised > 10);
    }

    TEST_CASE("faithfulness basics") {
        const auto g = fixture::running_example();
        CHECK(is_faithful(GraphOracleModel(g), g));
        CHECK(is_faithful(everything_but_self(3), DirectedMixedGraph(3)));
        CHECK_FALSE(is_faithful(everything(3), DirectedMixedGraph(3)));
        Rng rng(3);
        for (int i = 0; i < 50; ++i) {
            const auto model = oracle::random_closed_model(3, rng);
            CHECK(is_faithful(model, DirectedMixedGraph(3)));
        }
        // Dropping an edge of the true graph makes its removed dependence look like a separation.
        auto smaller = g;
        smaller.remove_edge(1, 3);
        const GraphOracleModel model(g);
        CHECK(is_faithful(model, smaller) == is_transitively_closed(model, smaller));
    }

    TEST_CASE("transitive closure matches faithfulness") {
        Rng rng(4);
        for (int i = 0; i < 150; ++i) {
            const std::size_t n = 3 + i % 2;
            const auto model = oracle::random_closed_model(n, rng);
            const auto d = oracle::random_graph(n, rng, 0.4);
            CHECK(is_transitively_closed(model, d) == is_faithful(model, d));
        }
    }

    TEST_CASE("k-faithfulness") {
        Rng rng(5);
        for (int i = 0; i < 60; ++i) {
            const std::size_t n = 3 + i % 2;
            const auto model = oracle::random_closed_model(n, rng);
            const auto d = oracle::random_graph(n, rng, 0.3);
            CHECK(is_k_faithful(model, d, n) == is_faithful(model, d));
            CHECK(is_k_faithful(model, d, n - 1) == is_faithful(model, d));
            if (is_k_faithful(model, d, 1)) CHECK(is_k_faithful(model, d, 0));
            const auto check0 = check_k_faithful(model, d, 0);
            if (!check0.holds) CHECK(check0.witness->c.empty());
        }
    }

    TEST_CASE("hierarchy of direct checkers") {
        Rng rng(6);
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 2 + i % 3;
            const auto d = oracle::random_graph(n, rng, 0.35);
            const auto model = oracle::random_closed_model(n, rng);
            const bool faithful = is_faithful(model, d);
            const bool trek = check_trek_faithful(model, d).holds;
            const bool ancestor = check_ancestor_faithful(model, d).holds;
            const bool parent = check_parent_faithful(model, d).holds;
            if (faithful) CHECK(trek);
            if (trek) CHECK(ancestor);
            if (ancestor) CHECK(parent);
            if (parent && check_markov(model, d).holds) {
                CHECK(check_causal_minimality(model, d, MinimalityMode::definitional));
            }
        }
        const auto g = fixture::running_example();
        CHECK(check_parent_dependence(GraphOracleModel(g), g).holds);
    }

    TEST_CASE("condition hierarchy") {
        const auto g = fixture::running_example();
        const auto h = check_conditions_hierarchy(GraphOracleModel(g), g);
        CHECK(h == ConditionHierarchy{true, true, true, true});

        Rng rng(7);
        for (int i = 0; i < 120; ++i) {
            const std::size_t n = 2 + i % 3;
            const auto d = oracle::random_graph(n, rng, 0.35);
            const auto model = oracle::random_closed_model(n, rng);
            const auto levels = check_conditions_hierarchy(model, d);
            CHECK(levels.d0 == check_parent_faithful(model, d).holds);
            CHECK(levels.d0_d1p == check_ancestor_faithful(model, d).holds);
            CHECK(levels.d0_d1p_d3p == check_trek_faithful(model, d).holds);
            CHECK(levels.d0_d1p_d2_d3p == is_faithful(model, d));
            CHECK(levels.d0_d1p_d2_d3p == is_transitively_closed(model, d));
        }
    }

    TEST_CASE("causal minimality") {
        Rng rng(8);
        for (int i = 0; i < 40; ++i) {
            const std::size_t n = 2 + i % 4;
            const auto d = oracle::random_graph(n, rng, 0.35);
            const GraphOracleModel model(d);
            CHECK(check_causal_minimality(model, d, MinimalityMode::definitional));
            CHECK(check_causal_minimality(model, d, MinimalityMode::pairwise));
            if (d.num_proper_edges() < n * (n - 1)) {
                auto bigger = d;
                for (NodeId a = 0; a < n; ++a) {
                    bool added = false;
                    for (NodeId b = 0; b < n && !added; ++b) {
                        if (!bigger.has_edge(a, b)) {
                            bigger.add_edge(a, b);
                            added = true;
                        }
                    }
                    if (added) break;
                }
                CHECK_FALSE(check_causal_minimality(model, bigger, MinimalityMode::definitional));
                CHECK_FALSE(check_causal_minimality(model, bigger, MinimalityMode::pairwise));
            }
        }
    }

    TEST_CASE("edge-transitive graph") {
        for (std::uint64_t code = 0; code < oracle::num_directed_graphs(3); ++code) {
            const auto d = oracle::graph_from_code(3, code);
            CHECK(edge_transitive_graph(GraphOracleModel(d)) == d);
        }
        CHECK(edge_transitive_graph(everything(3)) == DirectedMixedGraph(3));

        Rng rng(9);
        for (int i = 0; i < 60; ++i) {
            const std::size_t n = 3 + i % 2;
            const auto model = oracle::random_closed_model(n, rng);
            const auto f = edge_transitive_graph(model);
            CHECK(is_faithful(model, f));
            CHECK(edge_transitive_graph_bounded(model, n - 1) == f);
            const auto f0 = edge_transitive_graph_bounded(model, 0);
            CHECK(is_subgraph(f, f0));
            CHECK(is_k_faithful(model, f0, 0));
            const auto f1 = edge_transitive_graph_bounded(model, 1);
            CHECK(is_k_faithful(model, f1, 1));
        }
        CHECK_THROWS(edge_transitive_graph_bounded(everything(3), 3));
    }

    TEST_CASE("trimming") {
        const auto g = fixture::running_example();
        CHECK(trim(GraphOracleModel(g), g) == g);
        CHECK(trim(everything(3), DirectedMixedGraph::complete(3)) == DirectedMixedGraph(3));
        Rng rng(10);
        for (int i = 0; i < 60; ++i) {
            const std::size_t n = 3 + i % 2;
            const auto model = oracle::random_closed_model(n, rng);
            auto start = edge_transitive_graph(model);
            for (NodeId a = 0; a < n; ++a) {
                for (NodeId b = 0; b < n; ++b) {
                    if (std::bernoulli_distribution(0.3)(rng)) start.add_edge(a, b);
                }
            }
            const auto trimmed = trim(model, start);
            CHECK(is_faithful(model, trimmed));
            CHECK(is_subgraph(trimmed, start));
        }
    }

    TEST_CASE("perfect maps") {
        Rng rng(11);
        for (int i = 0; i < 10; ++i) {
            const auto d = oracle::random_graph(3, rng, 0.4);
            const GraphOracleModel model(d);
            const auto found = find_perfect_map(model);
            REQUIRE(found.has_value());
            for_each_nontrivial_triple(3, false, [&](const IndependenceTriple& t) {
                CHECK(mu_separated(*found, t.a, t.b, t.c) == mu_separated(d, t.a, t.b, t.c));
            });
        }
        // 1 independent of 0 given {1} but not given the empty set has no graph.
        std::vector<IndependenceTriple> some;
        for_each_nontrivial_triple(2, false, [&](const IndependenceTriple& t) {
            const bool self = !((t.a - t.c) & t.b).empty();
            const bool dropped = (t.a - t.c).contains(0) && t.b.contains(1) && t.c.empty();
            if (!self && !dropped) some.push_back(t);
        });
        const auto closed = close_under_decomposition(ExplicitModel(2, some));
        CHECK(closed.independent({0}, {1}, {1}));
        CHECK_FALSE(closed.independent({0}, {1}, {}));
        CHECK_FALSE(find_perfect_map(closed).has_value());
        CHECK_THROWS(find_perfect_map(GraphOracleModel(DirectedMixedGraph(5))));
    }
}
