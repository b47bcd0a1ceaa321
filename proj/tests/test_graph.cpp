#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "localind/graph.hpp"
#include "localind/separation.hpp"
#include "oracles.hpp"

using namespace localind;

TEST_SUITE("graph") {
    TEST_CASE("self-loops are always present") {
        DirectedMixedGraph g(3);
        for (NodeId v = 0; v < 3; ++v) CHECK(g.has_edge(v, v));
        CHECK(g.num_proper_edges() == 0);
        CHECK_THROWS(g.remove_edge(1, 1));
        CHECK_THROWS(g.add_bidirected(2, 2));
        CHECK_THROWS(g.add_edge(0, 3));
        CHECK_THROWS(DirectedMixedGraph(65));
        CHECK(DirectedMixedGraph::complete(3).num_proper_edges() == 6);
    }

    TEST_CASE("ancestors") {
        const auto g = fixture::running_example();
        CHECK(ancestors(g, NodeSet{3}) == NodeSet{0, 1, 2, 3});
        CHECK(ancestors(g, NodeSet{0}) == NodeSet{0});
        CHECK(ancestors(g, NodeSet{}) == NodeSet{});

        Rng rng(11);
        for (int i = 0; i < 200; ++i) {
            const auto d = oracle::random_graph(6, rng, 0.2, 0.2);
            const NodeSet b = oracle::random_subset(6, rng, 0.3);
            CHECK(ancestors(d, b) == oracle::ancestors(d, b));
        }
    }

    TEST_CASE("subgraph relation") {
        const auto g = fixture::running_example();
        CHECK(is_subgraph(g, g));
        CHECK(is_subgraph(DirectedMixedGraph(4), g));
        auto smaller = g;
        smaller.remove_edge(1, 3);
        CHECK_FALSE(is_subgraph(g, smaller));
        CHECK(is_subgraph(smaller, g));
        auto mixed = g;
        mixed.add_bidirected(0, 2);
        CHECK_FALSE(is_subgraph(mixed, g));
    }

    TEST_CASE("latent projection") {
        const auto g = fixture::running_example();
        const auto full = latent_projection(g, NodeSet::full(4));
        CHECK(full.graph == g);
        CHECK(full.index_map == std::vector<NodeId>{0, 1, 2, 3});

        const auto chain = latent_projection(fixture::chain3(), NodeSet{0, 2});
        CHECK(chain.graph.has_edge(0, 1));
        CHECK_FALSE(chain.graph.has_bidirected_edges());
        CHECK(chain.index_map == std::vector<NodeId>{0, 2});

        const auto fork = latent_projection(fixture::fork3(), NodeSet{1, 2});
        CHECK(fork.graph.has_bidirected(0, 1));
        CHECK(fork.graph.num_proper_edges() == 0);
        CHECK(fork.has_bidirected);
    }

    TEST_CASE("pair order") {
        const auto g = fixture::running_example();
        CHECK(pair_order(g, 0, 3) == 3);
        CHECK_FALSE(pair_order(g, 0, 1).has_value());
        CHECK(pair_order(DirectedMixedGraph(2), 0, 1) == 0);
        CHECK_THROWS(pair_order(g, 2, 2));

        // Cross-check against exhaustive search with the walk enumerator.
        Rng rng(5);
        for (int i = 0; i < 40; ++i) {
            const auto d = oracle::random_graph(4, rng, 0.35);
            for (NodeId a = 0; a < 4; ++a) {
                for (NodeId b = 0; b < 4; ++b) {
                    if (a == b) continue;
                    std::optional<std::size_t> expected;
                    for (const NodeSet c : subsets_by_size(NodeSet::full(4) - NodeSet{a})) {
                        if (oracle::mu_separated(d, NodeSet{a}, NodeSet{b}, c)) {
                            expected = c.size();
                            break;
                        }
                    }
                    CHECK(pair_order(d, a, b) == expected);
                }
            }
        }
    }

    TEST_CASE("graph order") {
        CHECK(graph_order(fixture::running_example()).value == 3);
        CHECK(graph_order(DirectedMixedGraph::complete(4)).value == 0);
        CHECK_FALSE(graph_order(DirectedMixedGraph::complete(4)).has_finite_pair);
        CHECK(graph_order(DirectedMixedGraph(4)).value == 0);
        CHECK(graph_order(DirectedMixedGraph(4)).has_finite_pair);
    }

    TEST_CASE("random graphs") {
        Rng rng(1);
        CHECK(sample_graph(1, rng).num_nodes() == 1);

        Rng a(42);
        Rng b(42);
        CHECK(sample_graph(5, a) == sample_graph(5, b));

        Rng freq(7);
        std::size_t edges = 0;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i) edges += sample_graph(5, freq).num_proper_edges();
        const double rate = static_cast<double>(edges) / (draws * 20.0);
        CHECK(std::abs(rate - 0.25) < 0.02);
    }

    TEST_CASE("text format") {
        auto g = fixture::running_example();
        g.add_bidirected(0, 2);
        const std::string text = format_graph(g);
        CHECK(parse_graph(text) == g);
        CHECK(parse_graph("# comment\nn=3\n0 -> 1\n\n1 <-> 2\n") ==
              DirectedMixedGraph(3, {{0, 1}}, {{1, 2}}));
        CHECK_THROWS(parse_graph("0 -> 1\n"));
        CHECK_THROWS(parse_graph("n=2\n0 => 1\n"));
        CHECK_THROWS(parse_graph("n=2\n0 -> 2\n"));
        CHECK_THROWS(parse_graph(""));
    }
}
