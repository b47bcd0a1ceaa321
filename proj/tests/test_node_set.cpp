#include <doctest.h>

#include "localind/node_set.hpp"

using namespace localind;

TEST_SUITE("node_set") {
    TEST_CASE("basic set algebra") {
        NodeSet s{0, 2, 5};
        CHECK(s.size() == 3);
        CHECK(s.contains(2));
        CHECK_FALSE(s.contains(1));
        CHECK(s.members() == std::vector<NodeId>{0, 2, 5});
        CHECK((s - NodeSet{2}) == NodeSet{0, 5});
        CHECK((s | NodeSet{1}).size() == 4);
        CHECK((s & NodeSet{2, 3}) == NodeSet{2});
        CHECK(NodeSet{2}.is_subset_of(s));
        CHECK(NodeSet::full(3) == NodeSet{0, 1, 2});
        CHECK(NodeSet::full(64).size() == 64);
    }

    TEST_CASE("text round trip") {
        CHECK(to_string(NodeSet{}) == "");
        CHECK(to_string(NodeSet{1, 3}) == "1,3");
        CHECK(parse_node_set("1,3") == NodeSet{1, 3});
        CHECK(parse_node_set(" 4 , 0 ") == NodeSet{0, 4});
        CHECK(parse_node_set("") == NodeSet{});
        CHECK_THROWS(parse_node_set("1,x"));
        CHECK_THROWS(parse_node_set("64"));
    }

    TEST_CASE("subsets of a given size come in lexicographic order") {
        std::vector<NodeSet> seen;
        for_each_subset_of_size(NodeSet{1, 2, 4, 7}, 2, [&](NodeSet s) { seen.push_back(s); });
        const std::vector<NodeSet> expected{{1, 2}, {1, 4}, {1, 7}, {2, 4}, {2, 7}, {4, 7}};
        CHECK(seen == expected);

        std::size_t calls = 0;
        const bool hit = any_subset_of_size(NodeSet::full(5), 3, [&](NodeSet s) {
            ++calls;
            return s == NodeSet{0, 1, 3};
        });
        CHECK(hit);
        CHECK(calls == 2);
        CHECK_FALSE(any_subset_of_size(NodeSet::full(3), 4, [](NodeSet) { return true; }));
        CHECK(any_subset_of_size(NodeSet{}, 0, [](NodeSet s) { return s.empty(); }));
    }

    TEST_CASE("all subsets by size") {
        const auto all = subsets_by_size(NodeSet{0, 1, 2});
        REQUIRE(all.size() == 8);
        CHECK(all.front().empty());
        CHECK(all[1] == NodeSet{0});
        CHECK(all[4] == NodeSet{0, 1});
        CHECK(all.back() == NodeSet{0, 1, 2});
        std::size_t count = 0;
        for_each_submask(NodeSet{1, 3}, [&](NodeSet) { ++count; });
        CHECK(count == 4);
    }
}
